#pragma once

#include "bppcheck/acs.hpp"
#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bppcheck {

struct ExplorationBudget
{
    std::size_t max_states = 50000;
    std::optional<std::size_t> max_depth;
    std::int64_t count_cap = kDefaultCountCap;
};

class OracleAnswer
{
    bool _exhausted = true;
    bool _value = false;

public:
    [[nodiscard]] static OracleAnswer definitely(bool v);
    [[nodiscard]] static OracleAnswer exhausted_budget();

    [[nodiscard]] bool is_definite() const { return !_exhausted; }
    // Definite answers only.
    [[nodiscard]] bool value() const;

    friend bool operator==(const OracleAnswer&, const OracleAnswer&) = default;
};

[[nodiscard]] std::string to_string(const OracleAnswer& a);

struct Edge
{
    std::size_t from;
    std::size_t to;
    RuleId rule;
};

struct Exploration
{
    std::vector<Marking> states; // BFS discovery order; states[0] is the initial marking
    std::vector<std::size_t> depth;
    std::vector<Edge> edges;     // only among discovered states
    bool complete = false;       // frontier emptied with no budget, depth or cap cut-off
};

[[nodiscard]] Exploration reachable_set(const Bpp& bpp, const Marking& init, const ExplorationBudget& budget = {});

// Reachability of a marking satisfying the propositional formula psi.
[[nodiscard]] OracleAnswer check_ef_oracle(const Bpp& bpp, const Marking& init, const Formula& psi,
                                           const ExplorationBudget& budget = {});

// Direct evaluation of the k-step bounded semantics. Accepts sugared connectives and EF
// (unbounded, via check_ef_oracle semantics on the current marking). max_states bounds the
// number of memoised (marking, subformula, steps) entries.
[[nodiscard]] OracleAnswer eval_bounded(const Formula& f, const Marking& m, int k, const Bpp& bpp,
                                        const ExplorationBudget& budget = {});

// Graphviz rendering of an exploration; node labels are markings, edge labels rule actions.
[[nodiscard]] std::string to_dot(const Bpp& bpp, const Exploration& e);

struct AcsExploration
{
    std::vector<AcsPlace> places;
    std::vector<std::size_t> depth;
    bool complete = false;
};

// BFS under the original counter semantics.
[[nodiscard]] AcsExploration acs_reachable(const Acs& acs, const AcsPlace& init, const ExplorationBudget& budget = {});

} // namespace bppcheck
