#pragma once

// Hand-rolled random generators for property tests.

#include "bppcheck/acs.hpp"
#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v)
{
    return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

struct BppShape
{
    int max_symbols = 5;
    int max_rules = 8;
    int max_rhs = 3;
    int n_actions = 2;
};

inline bppcheck::Bpp bpp(Rng& rng, const BppShape& shape = {})
{
    int n = static_cast<int>(uniform(rng, 1, shape.max_symbols));
    std::vector<std::string> symbols;
    for (int i = 0; i < n; ++i)
        symbols.push_back("P" + std::to_string(i));
    std::vector<std::string> actions;
    for (int i = 0; i < shape.n_actions; ++i)
        actions.push_back(std::string(1, static_cast<char>('a' + i)));
    int m = static_cast<int>(uniform(rng, 1, shape.max_rules));
    std::vector<bppcheck::RuleDecl> rules;
    for (int r = 0; r < m; ++r) {
        bppcheck::RuleDecl d;
        d.lhs = pick(rng, symbols);
        d.action = pick(rng, actions);
        int len = static_cast<int>(uniform(rng, 0, shape.max_rhs));
        for (int i = 0; i < len; ++i)
            d.rhs.push_back(pick(rng, symbols));
        rules.push_back(std::move(d));
    }
    return bppcheck::Bpp(symbols, rules);
}

inline bppcheck::Marking marking(Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> c(n);
    for (auto& x : c)
        x = uniform(rng, lo, hi);
    return bppcheck::Marking(std::move(c));
}

// Initial markings biased towards a single symbol, the shape the encoding was designed for.
inline bppcheck::Marking initial(Rng& rng, std::size_t n)
{
    if (coin(rng, 0.6)) {
        bppcheck::Marking m(n);
        m.set(bppcheck::SymbolId{static_cast<std::uint32_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1))}, 1);
        return m;
    }
    return marking(rng, n, 0, 2);
}

inline bppcheck::LinearAtom atom(Rng& rng, const bppcheck::Bpp& bpp, bool allow_negative = true)
{
    bppcheck::LinearAtom a;
    int terms = static_cast<int>(uniform(rng, 1, std::min<std::int64_t>(3, bpp.dimension())));
    for (int i = 0; i < terms; ++i) {
        std::int64_t c = allow_negative ? uniform(rng, -2, 2) : uniform(rng, 1, 2);
        if (c == 0)
            c = 1;
        a.terms.push_back({pick(rng, bpp.symbols()), c});
    }
    static const std::vector<bppcheck::Cmp> cmps{bppcheck::Cmp::Ge, bppcheck::Cmp::Le, bppcheck::Cmp::Gt,
                                                 bppcheck::Cmp::Lt, bppcheck::Cmp::Eq, bppcheck::Cmp::Ne};
    a.cmp = pick(rng, cmps);
    a.bound = uniform(rng, 0, 4);
    return a;
}

inline bppcheck::Formula propositional(Rng& rng, const bppcheck::Bpp& bpp, int depth)
{
    using bppcheck::Formula;
    if (depth <= 0 || coin(rng, 0.4))
        return Formula::atom(atom(rng, bpp));
    switch (uniform(rng, 0, 3)) {
    case 0:
        return Formula::negation(propositional(rng, bpp, depth - 1));
    case 1:
        return Formula::conjunction(propositional(rng, bpp, depth - 1), propositional(rng, bpp, depth - 1));
    case 2:
        return Formula::disjunction(propositional(rng, bpp, depth - 1), propositional(rng, bpp, depth - 1));
    default:
        return Formula::implication(propositional(rng, bpp, depth - 1), propositional(rng, bpp, depth - 1));
    }
}

// EF-free formula over atoms, connectives, EX/AX, EG/AF. depth counts operator nesting.
inline bppcheck::Formula eg_formula(Rng& rng, const bppcheck::Bpp& bpp, int depth)
{
    using bppcheck::Formula;
    if (depth <= 0 || coin(rng, 0.2))
        return Formula::atom(atom(rng, bpp));
    const auto& actions = bpp.actions();
    auto label = [&] { return actions.empty() ? std::string("a") : pick(rng, actions); };
    switch (uniform(rng, 0, 8)) {
    case 0:
        return Formula::negation(eg_formula(rng, bpp, depth - 1));
    case 1:
        return Formula::conjunction(eg_formula(rng, bpp, depth - 1), eg_formula(rng, bpp, depth - 1));
    case 2:
        return Formula::disjunction(eg_formula(rng, bpp, depth - 1), eg_formula(rng, bpp, depth - 1));
    case 3:
        return Formula::implication(eg_formula(rng, bpp, depth - 1), eg_formula(rng, bpp, depth - 1));
    case 4:
        return Formula::forall_next(label(), eg_formula(rng, bpp, depth - 1));
    case 5:
        return Formula::forall_finally(eg_formula(rng, bpp, depth - 1));
    case 6:
    case 7:
        return Formula::exists_globally(eg_formula(rng, bpp, depth - 1));
    default:
        return Formula::exists_next(label(), eg_formula(rng, bpp, depth - 1));
    }
}

struct AcsShape
{
    int max_states = 3;
    int max_procs = 2;
    int max_msgs = 2;
    int max_rules = 4;
};

inline bppcheck::Acs acs(Rng& rng, const AcsShape& shape = {})
{
    using namespace bppcheck;
    int nq = static_cast<int>(uniform(rng, 1, shape.max_states));
    int np = static_cast<int>(uniform(rng, 1, shape.max_procs));
    int nm = static_cast<int>(uniform(rng, 1, shape.max_msgs));
    std::vector<std::string> q, p, m;
    for (int i = 0; i < nq; ++i)
        q.push_back("q" + std::to_string(i));
    for (int i = 0; i < np; ++i)
        p.push_back("p" + std::to_string(i));
    for (int i = 0; i < nm; ++i)
        m.push_back("m" + std::to_string(i));
    int nr = static_cast<int>(uniform(rng, 1, shape.max_rules));
    std::vector<AcsRule> rules;
    for (int r = 0; r < nr; ++r) {
        AcsRule rule;
        rule.from = static_cast<std::size_t>(uniform(rng, 0, nq - 1));
        rule.to = static_cast<std::size_t>(uniform(rng, 0, nq - 1));
        auto proc = static_cast<std::size_t>(uniform(rng, 0, np - 1));
        auto msg = static_cast<std::size_t>(uniform(rng, 0, nm - 1));
        switch (uniform(rng, 0, 3)) {
        case 0:
            rule.op = acs_op::Nop{};
            break;
        case 1:
            rule.op = acs_op::Spawn{static_cast<std::size_t>(uniform(rng, 0, nq - 1))};
            break;
        case 2:
            rule.op = acs_op::Send{proc, msg};
            break;
        default:
            rule.op = acs_op::Recv{proc, msg};
            break;
        }
        rules.push_back(rule);
    }
    return Acs(q, p, m, rules);
}

inline bppcheck::AcsPlace place(Rng& rng, const bppcheck::Acs& a)
{
    bppcheck::AcsPlace pl = bppcheck::zero_place(a);
    for (auto& u : pl.u)
        u = uniform(rng, 0, 1);
    if (std::all_of(pl.u.begin(), pl.u.end(), [](auto c) { return c == 0; }))
        pl.u[0] = 1;
    for (auto& v : pl.v)
        v = coin(rng, 0.25) ? uniform(rng, 1, 2) : 0;
    return pl;
}

} // namespace gen
