#include "bppcheck/oracle.hpp"
#include "bppcheck/parser.hpp"

#include "../support/fixtures.hpp"
#include "../support/gen.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace bppcheck;
using fixtures::M;

namespace {

LinearAtom atom(std::vector<std::pair<std::string, std::int64_t>> terms, Cmp cmp, std::int64_t bound)
{
    LinearAtom a{{}, cmp, bound};
    for (auto& [s, c] : terms)
        a.terms.push_back({s, c});
    return a;
}

Formula A(std::vector<std::pair<std::string, std::int64_t>> terms, Cmp cmp, std::int64_t bound)
{
    return Formula::atom(atom(std::move(terms), cmp, bound));
}

std::set<Marking> as_set(const Exploration& e) { return {e.states.begin(), e.states.end()}; }

const auto T = OracleAnswer::definitely(true);
const auto F = OracleAnswer::definitely(false);

} // namespace

TEST_CASE("answers")
{
    CHECK(T.is_definite());
    CHECK(T.value());
    CHECK_FALSE(F.value());
    CHECK_FALSE(OracleAnswer::exhausted_budget().is_definite());
    CHECK_THROWS((void)OracleAnswer::exhausted_budget().value());
    CHECK(to_string(T) == "Definitely(true)");
    CHECK(to_string(OracleAnswer::exhausted_budget()) == "ExhaustedBudget");
}

TEST_CASE("reachable_set on small systems")
{
    auto chain = fixtures::chain();
    ExplorationBudget two;
    two.max_depth = 2;
    auto e = reachable_set(chain, M({1, 0, 0}), two);
    auto s = as_set(e);
    for (auto m : {M({1, 0, 0}), M({0, 1, 1}), M({1, 1, 1}), M({1, 1, 0})})
        CHECK(s.count(m));
    CHECK(s.size() == 4);
    CHECK_FALSE(e.complete);
    CHECK(e.states[0] == M({1, 0, 0}));
    CHECK(e.depth == std::vector<std::size_t>{0, 1, 2, 2});

    Bpp ruleless({"X"}, {});
    auto one = reachable_set(ruleless, M({1}));
    CHECK(one.states == std::vector<Marking>{M({1})});
    CHECK(one.complete);

    auto spawn = fixtures::spawn();
    ExplorationBudget three;
    three.max_depth = 3;
    auto sp = reachable_set(spawn, M({1, 0, 0}), three);
    CHECK(std::any_of(sp.states.begin(), sp.states.end(), [](const Marking& m) { return m.at(2) == 1; }));

    ExplorationBudget tiny;
    tiny.max_states = 3;
    auto cut = reachable_set(chain, M({1, 0, 0}), tiny);
    CHECK(cut.states.size() <= 3);
    CHECK_FALSE(cut.complete);

    Bpp finite({"A", "B"}, {{"A", "a", {"B"}}, {"B", "a", {}}});
    auto fin = reachable_set(finite, M({2, 0}));
    CHECK(fin.complete);
    CHECK(fin.states.size() == 6);
}

TEST_CASE("reachable_set does not depend on rule order")
{
    gen::Rng rng(12);
    ExplorationBudget budget;
    budget.max_depth = 4;
    for (int i = 0; i < 100; ++i) {
        auto b = gen::bpp(rng);
        std::vector<RuleDecl> rev;
        for (const auto& r : b.rules()) {
            RuleDecl d{b.symbol_name(r.lhs), r.action, {}};
            for (auto s : r.rhs)
                d.rhs.push_back(b.symbol_name(s));
            rev.insert(rev.begin(), d);
        }
        Bpp reversed(b.symbols(), rev);
        auto init = gen::initial(rng, b.dimension());
        auto x = reachable_set(b, init, budget);
        auto y = reachable_set(reversed, init, budget);
        CHECK(as_set(x) == as_set(y));
        CHECK(x.complete == y.complete);
    }
}

TEST_CASE("check_ef_oracle")
{
    auto spawn = fixtures::spawn();
    CHECK(check_ef_oracle(spawn, M({1, 0, 0}), A({{"Y", 1}}, Cmp::Eq, 1)) == T);

    Bpp dead({"X", "Y"}, {});
    CHECK(check_ef_oracle(dead, M({1, 0}), A({{"Y", 1}}, Cmp::Ge, 1)) == F);

    // Y keeps growing and S never returns: the search cannot finish.
    ExplorationBudget small;
    small.max_states = 100;
    CHECK(check_ef_oracle(spawn, M({1, 0, 0}), A({{"S", 1}}, Cmp::Ge, 2), small) ==
          OracleAnswer::exhausted_budget());
}

TEST_CASE("ACS exploration of the ping system")
{
    auto file = parse_acs(read_file(fixtures::corpus("acs/ping.acs")));
    auto e = acs_reachable(file.acs, file.initial);
    CHECK(e.complete);
    CHECK(e.places.size() == 2);
    for (const auto& p : e.places) {
        CHECK(p.u[0] < 2);
        CHECK(p.u[1] < 2);
        CHECK(p.v[0] < 2);
    }
}

TEST_CASE("bounded evaluation on hand-computed cases")
{
    auto chain = fixtures::chain();
    auto init = M({1, 0, 0});
    auto next = Formula::exists_next("a", A({{"X2", 1}, {"X3", 1}}, Cmp::Ge, 2));
    CHECK(eval_bounded(next, init, 1, chain) == T);
    CHECK(eval_bounded(next, init, 0, chain) == F);
    CHECK(eval_bounded(Formula::exists_next("b", A({{"X1", 1}}, Cmp::Ge, 0)), init, 2, chain) == F);

    CHECK(eval_bounded(Formula::exists_globally(A({{"X1", 1}}, Cmp::Ge, 1)), init, 0, chain) == T);
    CHECK(eval_bounded(Formula::exists_globally(A({{"X1", 1}}, Cmp::Ge, 1)), init, 1, chain) == F);
    auto alive = Formula::exists_globally(A({{"X1", 1}, {"X2", 1}, {"X3", 1}}, Cmp::Ge, 1));
    CHECK(eval_bounded(alive, init, 2, chain) == T);

    auto mid = M({0, 1, 1});
    CHECK(eval_bounded(Formula::forall_next("a", A({{"X1", 1}}, Cmp::Ge, 1)), mid, 1, chain) == T);
    CHECK(eval_bounded(Formula::forall_next("a", A({{"X3", 1}}, Cmp::Ge, 1)), mid, 1, chain) == F);
    // no successor at k = 0, so the universal holds vacuously
    CHECK(eval_bounded(Formula::forall_next("a", A({{"X3", 1}}, Cmp::Ge, 1)), mid, 0, chain) == T);

    CHECK(eval_bounded(Formula::forall_finally(A({{"X1", 1}}, Cmp::Ge, 1)), init, 1, chain) == T);
    CHECK(eval_bounded(Formula::forall_finally(A({{"X3", 1}}, Cmp::Ge, 1)), init, 2, chain) == T);
    CHECK(eval_bounded(Formula::forall_finally(A({{"X3", 1}}, Cmp::Ge, 1)), init, 0, chain) == F);

    Bpp dead({"X", "D"}, {{"X", "a", {"D"}}});
    auto any = Formula::exists_globally(A({{"X", 1}, {"D", 1}}, Cmp::Ge, 1));
    CHECK(eval_bounded(any, M({1, 0}), 1, dead) == T);
    CHECK(eval_bounded(any, M({1, 0}), 2, dead) == F);

    auto both = Formula::conjunction(Formula::negation(A({{"X", 1}}, Cmp::Eq, 0)),
                                     Formula::disjunction(A({{"D", 1}}, Cmp::Ge, 1), A({{"X", 1}}, Cmp::Le, 1)));
    CHECK(eval_bounded(both, M({1, 0}), 0, dead) == T);
    CHECK(eval_bounded(Formula::implication(A({{"X", 1}}, Cmp::Ge, 1), A({{"D", 1}}, Cmp::Ge, 1)), M({1, 0}), 0,
                       dead) == F);
}

TEST_CASE("EG at k = 0 reduces to the atom")
{
    gen::Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        auto b = gen::bpp(rng);
        auto m = gen::marking(rng, b.dimension(), 0, 3);
        auto a = gen::atom(rng, b);
        CHECK(eval_bounded(Formula::exists_globally(Formula::atom(a)), m, 0, b) ==
              OracleAnswer::definitely(eval_atomic(a, m, b)));
    }
}

TEST_CASE("bounded evaluation reports exhaustion")
{
    Bpp grow({"X"}, {{"X", "a", {"X", "X"}}, {"X", "a", {"X"}}});
    ExplorationBudget tiny;
    tiny.max_states = 4;
    auto f = Formula::exists_globally(Formula::exists_globally(A({{"X", 1}}, Cmp::Ge, 1)));
    CHECK_FALSE(eval_bounded(f, M({1}), 6, grow, tiny).is_definite());
}

TEST_CASE("DOT export")
{
    auto spawn = fixtures::spawn();
    ExplorationBudget budget;
    budget.max_depth = 2;
    auto e = reachable_set(spawn, M({1, 0, 0}), budget);
    auto dot = to_dot(spawn, e);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("n0 [label=\"(1,0,0)\"") != std::string::npos);
    CHECK(dot.find("n0 -> n1") != std::string::npos);
    CHECK(dot.find("truncated") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') ==
          static_cast<std::ptrdiff_t>(4 + e.states.size() + e.edges.size() + 1));
}
