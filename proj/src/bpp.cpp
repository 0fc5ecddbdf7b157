#include "bppcheck/bpp.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>
#include <limits>

namespace bppcheck {

Marking::Marking(std::vector<std::int64_t> counts) : _counts(std::move(counts))
{
    for (auto c : _counts) {
        if (c < 0)
            throw Error(ErrorKind::IllFormed, "marking component is negative");
    }
}

bool Marking::is_zero() const
{
    return std::all_of(_counts.begin(), _counts.end(), [](auto c) { return c == 0; });
}

void Marking::set(SymbolId s, std::int64_t value)
{
    if (value < 0)
        throw Error(ErrorKind::IllFormed, "marking component is negative");
    _counts.at(s.value) = value;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto c : m.counts()) {
        h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool is_valid_symbol_name(std::string_view name)
{
    if (name.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front()))
        return false;
    return std::all_of(name.begin() + 1, name.end(),
                       [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Bpp::Bpp(std::vector<std::string> symbols, const std::vector<RuleDecl>& rules)
    : _symbols(std::move(symbols))
{
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
        const auto& name = _symbols[i];
        if (!is_valid_symbol_name(name))
            throw Error(ErrorKind::IllFormed, "invalid symbol name '" + name + "'");
        if (!_index.emplace(name, SymbolId{static_cast<std::uint32_t>(i)}).second)
            throw Error(ErrorKind::Duplicate, "duplicate symbol '" + name + "'");
    }
    _rules.reserve(rules.size());
    for (const auto& decl : rules) {
        Rule r;
        r.id = RuleId{static_cast<std::uint32_t>(_rules.size())};
        r.lhs = symbol(decl.lhs);
        r.action = decl.action.empty() ? std::string(kTauAction) : decl.action;
        r.rhs.reserve(decl.rhs.size());
        for (const auto& s : decl.rhs)
            r.rhs.push_back(symbol(s));
        if (!has_action(r.action))
            _actions.push_back(r.action);
        _rules.push_back(std::move(r));
    }
}

std::optional<SymbolId> Bpp::find_symbol(std::string_view name) const
{
    auto it = _index.find(std::string(name));
    if (it == _index.end())
        return std::nullopt;
    return it->second;
}

SymbolId Bpp::symbol(std::string_view name) const
{
    if (auto s = find_symbol(name))
        return *s;
    throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
}

bool Bpp::has_action(std::string_view label) const
{
    return std::find(_actions.begin(), _actions.end(), label) != _actions.end();
}

bool operator==(const Rule& a, const Rule& b)
{
    return a.id == b.id && a.lhs == b.lhs && a.action == b.action && a.rhs == b.rhs;
}

bool operator==(const Bpp& a, const Bpp& b)
{
    return a._symbols == b._symbols && a._rules == b._rules;
}

Marking parikh(const Bpp& bpp, std::span<const std::string> expr)
{
    Marking m(bpp.dimension());
    for (const auto& name : expr) {
        auto s = bpp.symbol(name);
        m.set(s, m[s] + 1);
    }
    return m;
}

Marking parikh(const Bpp& bpp, std::span<const SymbolId> expr)
{
    Marking m(bpp.dimension());
    for (auto s : expr) {
        if (s.value >= bpp.dimension())
            throw Error(ErrorKind::UnknownSymbol, "symbol index out of range");
        m.set(s, m[s] + 1);
    }
    return m;
}

static void check_dimension(const Bpp& bpp, const Marking& m)
{
    if (m.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch,
                    "marking has dimension " + std::to_string(m.size()) + ", BPP has " +
                        std::to_string(bpp.dimension()));
}

bool is_enabled(const Bpp& bpp, const Marking& m, RuleId r)
{
    check_dimension(bpp, m);
    return m[bpp.rule(r).lhs] >= 1;
}

std::vector<RuleId> enabled_rules(const Bpp& bpp, const Marking& m)
{
    check_dimension(bpp, m);
    std::vector<RuleId> out;
    for (const auto& r : bpp.rules()) {
        if (m[r.lhs] >= 1)
            out.push_back(r.id);
    }
    return out;
}

Marking fire(const Bpp& bpp, const Marking& m, RuleId r)
{
    if (!is_enabled(bpp, m, r))
        throw Error(ErrorKind::RuleNotEnabled,
                    "rule " + std::to_string(r.value + 1) + " is not enabled at " + to_string(m));
    const auto& rule = bpp.rule(r);
    Marking out = m;
    out.set(rule.lhs, m[rule.lhs] - 1);
    for (auto s : rule.rhs) {
        if (out[s] == std::numeric_limits<std::int64_t>::max())
            throw Error(ErrorKind::CountOverflow, "symbol count overflow");
        out.set(s, out[s] + 1);
    }
    return out;
}

std::vector<Successor> successors(const Bpp& bpp, const Marking& m)
{
    std::vector<Successor> out;
    for (auto r : enabled_rules(bpp, m))
        out.push_back(Successor{r, bpp.rule(r).action, fire(bpp, m, r)});
    return out;
}

std::string to_string(const Marking& m)
{
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(m.at(i));
    }
    return s + ")";
}

} // namespace bppcheck
