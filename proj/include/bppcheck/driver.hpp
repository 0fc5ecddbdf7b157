#pragma once

#include "bppcheck/error.hpp"
#include "bppcheck/verdict.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bppcheck {

enum class Mode { Auto, Ef, Eg };
enum class Format { Text, Json };

struct RunConfig
{
    std::string input;
    std::optional<std::string> property; // ACS inputs only
    bool acs = false;
    int k = 10;
    Mode mode = Mode::Auto;
    std::optional<std::string> solver;
    double timeout_s = 60;
    std::optional<std::string> emit_smt;
    std::optional<std::string> dot;
    bool stats = false;
    Format format = Format::Text;
};

struct Report
{
    Verdict verdict;
    double total_ms = 0;
    std::vector<std::string> constraints; // top-level conjuncts of every script sent
};

// parse -> classify -> engine -> solver. Throws Error (or std::runtime_error for I/O).
[[nodiscard]] Report run_check(const RunConfig& config);

[[nodiscard]] std::string render_report(const Report& report, Format format, bool stats);

[[nodiscard]] int exit_code(Result r);
[[nodiscard]] int exit_code(ErrorKind kind);

// Exit codes: 0 holds, 1 not-holds, 2 unknown, 3 usage/parse/formula-class, 4 solver/environment.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bppcheck
