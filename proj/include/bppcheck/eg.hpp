#pragma once

#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"
#include "bppcheck/ef.hpp"
#include "bppcheck/smt.hpp"
#include "bppcheck/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bppcheck {

// One symbolic marking: an expression per symbol (variables, or constants for a concrete marking).
using StateVars = std::vector<smt::LinExpr>;

[[nodiscard]] StateVars concrete_state(const Marking& m);

// parikh(rhs) - unit(lhs).
[[nodiscard]] std::vector<std::int64_t> parikh_minus(const Bpp& bpp, SymbolId lhs, std::span<const SymbolId> rhs);

// s_i + P-(lhs, rhs)_i = t_i for every i.
[[nodiscard]] smt::Term t_minus(const Bpp& bpp, const StateVars& s, const StateVars& t, const Rule& r);

// Disjunction over the rules labelled `action` of s(lhs) >= 1 and t_minus. False if none.
[[nodiscard]] smt::Term trans_constraint(const Bpp& bpp, const StateVars& s, const StateVars& t,
                                         std::string_view action);

// Consecutive positions connected by some rule, labels ignored. True for a single position.
[[nodiscard]] smt::Term path_constraint(const Bpp& bpp, const std::vector<StateVars>& u);

// Fresh names: s<serial>_<sym> for next-step targets, u<j>_<sym> for path positions.
class StateAllocator
{
    const Bpp& _bpp;
    std::size_t _next_target = 0;
    std::size_t _next_position = 0;
    std::size_t _target_vars = 0;
    std::size_t _path_vars = 0;

    std::vector<std::string> names(const std::string& prefix) const;

public:
    explicit StateAllocator(const Bpp& bpp) : _bpp(bpp) {}
    std::vector<std::string> target();
    std::vector<std::string> position();
    [[nodiscard]] std::size_t target_vars() const { return _target_vars; }
    [[nodiscard]] std::size_t path_vars() const { return _path_vars; }
};

// Recursive translation of a core EG-class formula at state s with bound k.
[[nodiscard]] smt::Term trans(const Formula& f, const StateVars& s, int k, const Bpp& bpp, StateAllocator& alloc);

struct EgEncoding
{
    smt::SmtScript script;
    std::size_t path_vars = 0;   // all u variables allocated
    std::size_t target_vars = 0; // all s variables allocated
    std::size_t bound_vars = 0;  // variables left under quantifiers
};

// Throws MixedFormula unless classify(f) is Eg (or the formula is propositional).
[[nodiscard]] EgEncoding encode_eg(const Bpp& bpp, const Marking& init, const CoreFormula& f, int k);

struct EgOptions
{
    smt::SolverConfig solver;
    ScriptHook on_script;
};

struct EgOutcome
{
    Verdict verdict;
    EgEncoding encoding;
    smt::SolverOutcome outcome;
};

[[nodiscard]] EgOutcome check_eg(const Bpp& bpp, const Marking& init, const CoreFormula& f, int k,
                                 const EgOptions& options = {});

} // namespace bppcheck
