#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bppcheck {

// Action carried by rules written without a label.
inline constexpr std::string_view kTauAction = "_tau";

// Markings are int64 vectors; exploration treats counts above this as a budget trip.
inline constexpr std::int64_t kDefaultCountCap = 2147483647;

struct SymbolId
{
    std::uint32_t value = 0;
    auto operator<=>(const SymbolId&) const = default;
};

struct RuleId
{
    std::uint32_t value = 0;
    auto operator<=>(const RuleId&) const = default;
};

struct Rule
{
    RuleId id;
    SymbolId lhs;
    std::string action;
    std::vector<SymbolId> rhs; // multiset, kept in written order; empty means the symbol dies
};

// Rule as written in a source, before symbol resolution. An empty action means unlabeled.
struct RuleDecl
{
    std::string lhs;
    std::string action;
    std::vector<std::string> rhs;
};

class Marking
{
    std::vector<std::int64_t> _counts;

public:
    Marking() = default;
    explicit Marking(std::size_t dimension) : _counts(dimension, 0) {}
    // Throws IllFormed if any component is negative.
    explicit Marking(std::vector<std::int64_t> counts);

    [[nodiscard]] std::size_t size() const { return _counts.size(); }
    [[nodiscard]] std::int64_t operator[](SymbolId s) const { return _counts[s.value]; }
    [[nodiscard]] std::int64_t at(std::size_t i) const { return _counts.at(i); }
    [[nodiscard]] std::span<const std::int64_t> counts() const { return _counts; }
    [[nodiscard]] bool is_zero() const;

    void set(SymbolId s, std::int64_t value);

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct MarkingHash
{
    std::size_t operator()(const Marking& m) const noexcept;
};

// A BPP: ordered symbol table plus labelled rules with single-symbol left-hand sides.
// Symbol order is the vector index order used everywhere else. Immutable once built.
class Bpp
{
    std::vector<std::string> _symbols;
    std::unordered_map<std::string, SymbolId> _index;
    std::vector<std::string> _actions;
    std::vector<Rule> _rules;

public:
    Bpp() = default;
    Bpp(std::vector<std::string> symbols, const std::vector<RuleDecl>& rules);

    [[nodiscard]] std::size_t dimension() const { return _symbols.size(); }
    [[nodiscard]] const std::vector<std::string>& symbols() const { return _symbols; }
    [[nodiscard]] const std::string& symbol_name(SymbolId s) const { return _symbols.at(s.value); }
    [[nodiscard]] std::optional<SymbolId> find_symbol(std::string_view name) const;
    // Throws UnknownSymbol.
    [[nodiscard]] SymbolId symbol(std::string_view name) const;

    // Distinct action labels in first-use order.
    [[nodiscard]] const std::vector<std::string>& actions() const { return _actions; }
    [[nodiscard]] bool has_action(std::string_view label) const;

    [[nodiscard]] const std::vector<Rule>& rules() const { return _rules; }
    [[nodiscard]] const Rule& rule(RuleId r) const { return _rules.at(r.value); }

    friend bool operator==(const Bpp& a, const Bpp& b);
};

bool operator==(const Rule& a, const Rule& b);

[[nodiscard]] bool is_valid_symbol_name(std::string_view name);

// Count vector of a multiset of symbols, in declaration order. Throws UnknownSymbol.
[[nodiscard]] Marking parikh(const Bpp& bpp, std::span<const std::string> expr);
[[nodiscard]] Marking parikh(const Bpp& bpp, std::span<const SymbolId> expr);

// Ids of rules whose left-hand symbol is present in m, in rule order.
[[nodiscard]] std::vector<RuleId> enabled_rules(const Bpp& bpp, const Marking& m);

[[nodiscard]] bool is_enabled(const Bpp& bpp, const Marking& m, RuleId r);

// m - unit(lhs) + parikh(rhs). Throws RuleNotEnabled, DimensionMismatch.
[[nodiscard]] Marking fire(const Bpp& bpp, const Marking& m, RuleId r);

struct Successor
{
    RuleId rule;
    std::string action;
    Marking marking;
};

[[nodiscard]] std::vector<Successor> successors(const Bpp& bpp, const Marking& m);

// Renders "(c1,c2,...)".
[[nodiscard]] std::string to_string(const Marking& m);

} // namespace bppcheck
