#pragma once

#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"
#include "bppcheck/smt.hpp"
#include "bppcheck/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bppcheck {

// Variable names of the reachability encoding: x per symbol, y per rule, z per symbol.
struct EfVars
{
    std::vector<std::string> x;
    std::vector<std::string> y;
    std::vector<std::string> z;

    // x, then y, then z.
    [[nodiscard]] std::vector<std::string> all() const;
};

struct ReachabilityEncoding
{
    EfVars vars;
    smt::Term constraint;
    smt::Term flow;         // nonnegativity and flow equations only
    smt::Term connectivity; // spanning-tree block only
};

[[nodiscard]] EfVars ef_vars(const Bpp& bpp);

// Existential Presburger formula over x/y/z whose x-projection is the reachable set from init.
[[nodiscard]] ReachabilityEncoding encode_reachability(const Bpp& bpp, const Marking& init);

// Atom with symbol P replaced by the expression names[P].
[[nodiscard]] smt::Term encode_atom(const LinearAtom& a, const Bpp& bpp, const std::vector<smt::LinExpr>& state);

// Propositional formula (atoms and connectives) over a symbolic state.
[[nodiscard]] smt::Term encode_propositional(const Formula& f, const Bpp& bpp,
                                             const std::vector<smt::LinExpr>& state);

[[nodiscard]] std::vector<smt::LinExpr> variables_of(const std::vector<std::string>& names);

enum class RealizationStatus { Realized, Unrealizable, BudgetExceeded };

[[nodiscard]] const char* to_string(RealizationStatus s);

struct Realization
{
    RealizationStatus status = RealizationStatus::Unrealizable;
    std::vector<RuleId> sequence;
    Marking final_marking;
};

// Interleaving that fires rule r exactly counts[r] times from init. Backtracking search;
// node_budget bounds the number of search nodes.
[[nodiscard]] Realization realize_firing_counts(const Bpp& bpp, const Marking& init,
                                                const std::vector<std::int64_t>& counts,
                                                std::size_t node_budget = 200000);

// Called with the script index (0-based, in EF-node order) before each solver call.
using ScriptHook = std::function<void(std::size_t, const smt::SmtScript&)>;

struct EfOptions
{
    smt::SolverConfig solver;
    ScriptHook on_script;
    bool realize = true;
    std::size_t realization_budget = 200000;
};

struct EfNodeResult
{
    Formula body;
    smt::SmtScript script;
    smt::SolverOutcome outcome;
    bool model_verified = false; // assertion re-evaluated to true under the model
    std::optional<Realization> realization;
};

struct EfOutcome
{
    Verdict verdict;
    std::vector<EfNodeResult> nodes;
};

// Throws MixedFormula unless classify(f) == Ef; solver errors propagate.
[[nodiscard]] EfOutcome check_ef(const Bpp& bpp, const Marking& init, const CoreFormula& f,
                                 const EfOptions& options = {});

} // namespace bppcheck
