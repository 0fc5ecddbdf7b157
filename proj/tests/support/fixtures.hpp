#pragma once

#include "bppcheck/bpp.hpp"
#include "bppcheck/parser.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace fixtures {

// X1 -a-> X2 X3, X2 -a-> X1 X2, X3 -a-> X1
inline bppcheck::Bpp chain()
{
    return bppcheck::Bpp({"X1", "X2", "X3"},
                         {{"X1", "a", {"X2", "X3"}}, {"X2", "a", {"X1", "X2"}}, {"X3", "a", {"X1"}}});
}

// S -> X, X -> X Y (unlabeled)
inline bppcheck::Bpp spawn()
{
    return bppcheck::Bpp({"S", "X", "Y"}, {{"S", "", {"X"}}, {"X", "", {"X", "Y"}}});
}

inline bppcheck::Marking M(std::initializer_list<std::int64_t> counts)
{
    return bppcheck::Marking(std::vector<std::int64_t>(counts));
}

inline bppcheck::Marking unit(const bppcheck::Bpp& bpp, const std::string& sym)
{
    bppcheck::Marking m(bpp.dimension());
    m.set(bpp.symbol(sym), 1);
    return m;
}

inline std::string corpus(const std::string& rel) { return std::string(BPPCHECK_CORPUS_DIR) + "/" + rel; }

} // namespace fixtures
