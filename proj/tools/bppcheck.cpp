#include "bppcheck/driver.hpp"

#include <iostream>

int main(int argc, char** argv) { return bppcheck::run_cli(argc, argv, std::cout, std::cerr); }
