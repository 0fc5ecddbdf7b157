#include "bppcheck/bpp.hpp"
#include "bppcheck/error.hpp"

#include "../support/fixtures.hpp"
#include "../support/gen.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bppcheck;
using fixtures::M;

TEST_CASE("parikh counts in declaration order")
{
    Bpp b({"X1", "X2", "X3"}, {});
    std::vector<std::string> expr{"X1", "X2", "X2", "X3", "X3"};
    CHECK(parikh(b, std::span<const std::string>(expr)) == M({1, 2, 2}));

    Bpp single({"X"}, {});
    CHECK(parikh(single, std::span<const std::string>()) == M({0}));

    Bpp xy({"X", "Y"}, {});
    std::vector<std::string> e2{"X", "Y", "X"};
    CHECK(parikh(xy, std::span<const std::string>(e2)) == M({2, 1}));

    std::vector<std::string> bad{"Z"};
    CHECK_THROWS_AS((void)parikh(xy, std::span<const std::string>(bad)), Error);
}

TEST_CASE("enabled rules and firing on the three-symbol chain")
{
    auto b = fixtures::chain();
    CHECK(enabled_rules(b, M({1, 0, 0})) == std::vector<RuleId>{RuleId{0}});
    CHECK(enabled_rules(b, M({0, 0, 0})).empty());
    CHECK(enabled_rules(b, M({0, 1, 1})) == std::vector<RuleId>{RuleId{1}, RuleId{2}});

    CHECK(fire(b, M({1, 0, 0}), RuleId{0}) == M({0, 1, 1}));
    CHECK(fire(b, M({0, 1, 1}), RuleId{2}) == M({1, 1, 0}));
    CHECK_THROWS_AS((void)fire(b, M({0, 1, 1}), RuleId{0}), Error);

    Bpp loop({"X", "Y"}, {{"X", "a", {"X"}}});
    CHECK(fire(loop, M({1, 0}), RuleId{0}) == M({1, 0}));
}

TEST_CASE("successors pair each enabled rule with its target")
{
    auto b = fixtures::chain();
    auto s = successors(b, M({1, 0, 0}));
    REQUIRE(s.size() == 1);
    CHECK(s[0].action == "a");
    CHECK(s[0].marking == M({0, 1, 1}));
    CHECK(successors(b, M({0, 0, 0})).empty());

    auto two = successors(b, M({0, 1, 1}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].rule == RuleId{1});
    CHECK(two[0].marking == M({1, 1, 1}));
    CHECK(two[1].rule == RuleId{2});
    CHECK(two[1].marking == M({1, 1, 0}));
}

TEST_CASE("unlabeled rules carry the reserved action")
{
    auto b = fixtures::spawn();
    CHECK(b.rule(RuleId{0}).action == kTauAction);
    CHECK(b.has_action(kTauAction));
    CHECK(b.actions() == std::vector<std::string>{std::string(kTauAction)});
}

TEST_CASE("symbol table validation")
{
    CHECK_THROWS_AS(Bpp({"X", "X"}, {}), Error);
    CHECK_THROWS_AS(Bpp({"1X"}, {}), Error);
    CHECK_THROWS_AS(Bpp({"X"}, {{"Y", "a", {}}}), Error);
    CHECK_THROWS_AS(Marking(std::vector<std::int64_t>{1, -1}), Error);
    CHECK_THROWS_AS((void)enabled_rules(fixtures::chain(), M({1, 0})), Error);
}

TEST_CASE("property: firing preserves nonnegativity along random walks")
{
    gen::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto b = gen::bpp(rng);
        auto m = gen::marking(rng, b.dimension(), 0, 3);
        for (int step = 0; step < 20; ++step) {
            auto en = enabled_rules(b, m);
            if (en.empty())
                break;
            m = fire(b, m, gen::pick(rng, en));
            auto c = m.counts();
            REQUIRE(std::all_of(c.begin(), c.end(), [](auto x) { return x >= 0; }));
        }
    }
}

TEST_CASE("property: parikh ignores the order of the multiset")
{
    gen::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto b = gen::bpp(rng);
        std::vector<std::string> expr;
        int len = static_cast<int>(gen::uniform(rng, 0, 8));
        for (int i = 0; i < len; ++i)
            expr.push_back(gen::pick(rng, b.symbols()));
        auto before = parikh(b, std::span<const std::string>(expr));
        std::shuffle(expr.begin(), expr.end(), rng);
        CHECK(parikh(b, std::span<const std::string>(expr)) == before);
    }
}

TEST_CASE("property: firing from a strictly positive marking keeps other symbols strictly positive")
{
    gen::Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        auto b = gen::bpp(rng);
        auto m = gen::marking(rng, b.dimension(), 1, 4);
        for (auto r : enabled_rules(b, m)) {
            auto t = fire(b, m, r);
            auto lhs = b.rule(r).lhs;
            for (std::size_t i = 0; i < b.dimension(); ++i) {
                if (i == lhs.value)
                    REQUIRE(t.at(i) >= 0);
                else
                    REQUIRE(t.at(i) > 0);
            }
        }
    }
}

TEST_CASE("a dying symbol can reach zero from a strictly positive marking")
{
    Bpp b({"X", "Y"}, {{"X", "a", {}}});
    CHECK(fire(b, M({1, 1}), RuleId{0}) == M({0, 1}));
}

TEST_CASE("property: successors agree with enabled_rules and fire")
{
    gen::Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        auto b = gen::bpp(rng);
        auto m = gen::marking(rng, b.dimension(), 0, 2);
        auto en = enabled_rules(b, m);
        auto su = successors(b, m);
        REQUIRE(en.size() == su.size());
        for (std::size_t i = 0; i < en.size(); ++i) {
            CHECK(su[i].rule == en[i]);
            CHECK(su[i].action == b.rule(en[i]).action);
            CHECK(su[i].marking == fire(b, m, en[i]));
        }
    }
}
