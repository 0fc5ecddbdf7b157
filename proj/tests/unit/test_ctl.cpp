#include "bppcheck/ctl.hpp"
#include "bppcheck/error.hpp"
#include "bppcheck/oracle.hpp"

#include "../support/fixtures.hpp"
#include "../support/gen.hpp"

#include <doctest.h>

using namespace bppcheck;
using fixtures::M;

namespace {

Formula atom(std::vector<std::pair<std::string, std::int64_t>> terms, Cmp cmp, std::int64_t bound)
{
    LinearAtom a;
    for (auto& [s, c] : terms)
        a.terms.push_back({s, c});
    a.cmp = cmp;
    a.bound = bound;
    return Formula::atom(a);
}

} // namespace

TEST_CASE("desugar rewrites the derived connectives")
{
    auto l = atom({{"X", 1}}, Cmp::Ge, 1);
    auto l2 = atom({{"Y", 1}}, Cmp::Ge, 1);

    CHECK(desugar(Formula::forall_finally(l)).formula() ==
          Formula::negation(Formula::exists_globally(Formula::negation(l))));
    CHECK(desugar(l).formula() == l);
    CHECK(desugar(Formula::implication(l, l2)).formula() ==
          Formula::negation(Formula::conjunction(l, Formula::negation(l2))));
    CHECK(desugar(Formula::disjunction(l, l2)).formula() ==
          Formula::negation(Formula::conjunction(Formula::negation(l), Formula::negation(l2))));
    CHECK(desugar(Formula::forall_next("a", l)).formula() ==
          Formula::negation(Formula::exists_next("a", Formula::negation(l))));
    CHECK_THROWS_AS((void)CoreFormula::from(Formula::disjunction(l, l2)), Error);
}

TEST_CASE("classification routes formulas to engines")
{
    auto y1 = atom({{"Y", 1}}, Cmp::Eq, 1);
    CHECK(classify(desugar(Formula::exists_finally(y1))) == FormulaClass::Ef);

    auto phi1 = Formula::exists_globally(Formula::exists_next("a", atom({{"X2", 1}, {"X3", 1}}, Cmp::Ge, 2)));
    CHECK(classify(desugar(phi1)) == FormulaClass::Eg);

    auto mixed = Formula::conjunction(Formula::exists_finally(y1), Formula::exists_globally(y1));
    CHECK(classify(desugar(mixed)) == FormulaClass::Mixed);

    auto next_under_ef = Formula::exists_finally(Formula::exists_next("a", y1));
    CHECK(classify(desugar(next_under_ef)) == FormulaClass::Mixed);
    CHECK(mixed_reason(desugar(next_under_ef)).find("--mode eg") != std::string::npos);

    CHECK(classify(desugar(y1)) == FormulaClass::Ef);
}

TEST_CASE("atomic evaluation over integers")
{
    Bpp b({"X1", "X2", "X3"}, {});
    CHECK(eval_atomic(atom({{"X1", 1}, {"X2", 1}}, Cmp::Ge, 2).atom(), M({1, 1, 0}), b));
    CHECK_FALSE(eval_atomic(atom({{"X1", 1}, {"X2", -1}}, Cmp::Gt, 0).atom(), M({1, 2, 0}), b));

    Bpp y({"S", "X", "Y"}, {});
    CHECK(eval_atomic(atom({{"Y", 1}}, Cmp::Eq, 1).atom(), M({0, 1, 1}), y));
    CHECK_THROWS_AS((void)eval_atomic(atom({{"Q", 1}}, Cmp::Eq, 1).atom(), M({0, 1, 1}), y), Error);

    CHECK(eval_atomic(atom({{"X1", 1}, {"X1", 1}}, Cmp::Eq, 4).atom(), M({2, 0, 0}), b));
}

TEST_CASE("property: desugar is idempotent and leaves a core formula")
{
    gen::Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto b = gen::bpp(rng, {4, 6, 3, 2});
        auto f = gen::eg_formula(rng, b, 4);
        auto once = desugar(f);
        CHECK(is_core(once.formula()));
        CHECK(desugar(once.formula()) == once);
    }
}

TEST_CASE("property: classification agrees with operator occurrence")
{
    gen::Rng rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        auto b = gen::bpp(rng, {4, 6, 3, 2});
        Formula f = gen::coin(rng) ? gen::eg_formula(rng, b, 3)
                                   : Formula::exists_finally(gen::propositional(rng, b, 2));
        if (gen::coin(rng, 0.3))
            f = Formula::conjunction(f, gen::eg_formula(rng, b, 2));
        auto core = desugar(f);
        auto c = classify(core);
        if (c == FormulaClass::Eg)
            CHECK_FALSE(core.formula().contains(Op::EF));
        if (c == FormulaClass::Ef) {
            CHECK_FALSE(core.formula().contains(Op::EG));
            CHECK_FALSE(core.formula().contains(Op::ENext));
        }
    }
}

TEST_CASE("property: desugaring preserves bounded semantics")
{
    gen::Rng rng(23);
    ExplorationBudget budget;
    budget.max_states = 20000;
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto b = gen::bpp(rng, {3, 4, 2, 2});
        auto f = gen::eg_formula(rng, b, 3);
        auto m = gen::marking(rng, b.dimension(), 0, 2);
        int k = static_cast<int>(gen::uniform(rng, 0, 3));
        auto sugared = eval_bounded(f, m, k, b, budget);
        auto core = eval_bounded(desugar(f).formula(), m, k, b, budget);
        if (!sugared.is_definite() || !core.is_definite())
            continue;
        ++compared;
        CHECK_MESSAGE(sugared == core, to_text(f));
    }
    CHECK(compared > 250);
}

TEST_CASE("formula text round trips through the printer")
{
    auto f = Formula::conjunction(atom({{"X", 2}, {"Y", -1}}, Cmp::Ne, 3),
                                  Formula::forall_next("go", atom({{"Y", -1}}, Cmp::Le, 0)));
    auto text = to_text(f);
    CHECK(text.find("Conj(") == 0);
    CHECK(text.find("AX(go,") != std::string::npos);
}
