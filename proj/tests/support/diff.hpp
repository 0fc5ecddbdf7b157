#pragma once

// Differential drivers shared by the unit and acceptance suites.

#include "bppcheck/ef.hpp"
#include "bppcheck/eg.hpp"
#include "bppcheck/oracle.hpp"
#include "bppcheck/parser.hpp"

#include "gen.hpp"

#include <sstream>
#include <string>

namespace diff {

struct EfTally
{
    int instances = 0;
    int definite = 0;
    int disagreements = 0;
    int holds = 0;
    int certified = 0;
    int uncertified = 0; // holds without a realized firing sequence
    int unknown = 0;
    std::string first_failure;
};

inline std::string describe(const bppcheck::Bpp& b, const bppcheck::Marking& init, const bppcheck::Formula& f)
{
    try {
        return bppcheck::to_problem_text(b, init, f);
    } catch (const std::exception&) {
        auto text = bppcheck::to_problem_text(b, init, bppcheck::Formula::atom({{{b.symbols()[0], 1}}, bppcheck::Cmp::Ge, 0}));
        return text + "(formula has an atom without surface syntax)\n";
    }
}

inline void note(std::string& slot, const std::string& what)
{
    if (slot.empty())
        slot = what;
}

// One random EF instance: solver verdict against BFS, witness realisation, model re-evaluation.
inline void ef_instance(gen::Rng& rng, EfTally& t, const bppcheck::ExplorationBudget& budget,
                        const bppcheck::smt::SolverConfig& solver)
{
    using namespace bppcheck;
    auto b = gen::bpp(rng, {5, 8, 3, 2});
    auto init = gen::initial(rng, b.dimension());
    auto psi = gen::coin(rng, 0.7) ? Formula::atom(gen::atom(rng, b)) : gen::propositional(rng, b, 2);
    auto f = Formula::exists_finally(psi);
    ++t.instances;

    EfOptions opts;
    opts.solver = solver;
    auto out = check_ef(b, init, desugar(f), opts);
    auto oracle = check_ef_oracle(b, init, psi, budget);
    auto r = out.verdict.result;
    std::ostringstream ctx;
    ctx << describe(b, init, f);

    if (r == Result::Unknown)
        ++t.unknown;
    if (oracle.is_definite() && r != Result::Unknown) {
        ++t.definite;
        if ((r == Result::Holds) != oracle.value()) {
            ++t.disagreements;
            note(t.first_failure, "verdict " + std::string(to_string(r)) + " vs oracle " + to_string(oracle) + "\n" +
                                      ctx.str());
        }
    }
    if (r == Result::Holds) {
        ++t.holds;
        const auto& node = out.nodes.at(0);
        bool ok = node.model_verified && node.realization &&
                  node.realization->status == RealizationStatus::Realized &&
                  eval_propositional(psi, node.realization->final_marking, b);
        if (ok) {
            for (std::size_t i = 0; i < b.dimension(); ++i)
                ok = ok && node.realization->final_marking.at(i) == node.outcome.model->at("x_" + b.symbols()[i]);
        }
        if (ok) {
            ++t.certified;
        } else {
            ++t.uncertified;
            note(t.first_failure, "holds without a realized witness\n" + ctx.str());
        }
    }
}

struct EgTally
{
    int instances = 0;
    int definite = 0;
    int disagreements = 0;
    int unknown = 0;
    int negative_model_values = 0;
    std::string first_failure;
};

inline void eg_instance(gen::Rng& rng, EgTally& t, const bppcheck::ExplorationBudget& budget,
                        const bppcheck::smt::SolverConfig& solver)
{
    using namespace bppcheck;
    auto b = gen::bpp(rng, {4, 6, 3, 2});
    auto init = gen::marking(rng, b.dimension(), 1, 2);
    auto f = gen::eg_formula(rng, b, 3);
    int k = static_cast<int>(gen::uniform(rng, 0, 3));
    ++t.instances;

    EgOptions opts;
    opts.solver = solver;
    auto core = desugar(f);
    auto out = check_eg(b, init, core, k, opts);
    auto oracle = eval_bounded(core.formula(), init, k, b, budget);
    auto r = out.verdict.result;
    if (r == Result::Unknown) {
        ++t.unknown;
        return;
    }
    if (oracle.is_definite()) {
        ++t.definite;
        if ((r == Result::Holds) != oracle.value()) {
            ++t.disagreements;
            note(t.first_failure, "k=" + std::to_string(k) + " verdict " + to_string(r) + " vs oracle " +
                                      to_string(oracle) + "\n" + describe(b, init, f));
        }
    }
    if (r == Result::Holds && out.verdict.witness) {
        for (const auto& [name, value] : *out.verdict.witness) {
            if (value < 0) {
                ++t.negative_model_values;
                note(t.first_failure, "negative path variable " + name + "\n" + describe(b, init, f));
            }
        }
    }
}

} // namespace diff
