#pragma once

#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bppcheck {

// Actor communicating system: control states, process classes, messages and rules
// q1 -op-> q2. Indices below refer to the declaration-ordered tables of the owning Acs.
namespace acs_op {
struct Nop
{
    friend bool operator==(const Nop&, const Nop&) = default;
};
struct Spawn
{
    std::size_t state;
    friend bool operator==(const Spawn&, const Spawn&) = default;
};
struct Send
{
    std::size_t proc;
    std::size_t msg;
    friend bool operator==(const Send&, const Send&) = default;
};
struct Recv
{
    std::size_t proc;
    std::size_t msg;
    friend bool operator==(const Recv&, const Recv&) = default;
};
} // namespace acs_op

using AcsOp = std::variant<acs_op::Nop, acs_op::Spawn, acs_op::Send, acs_op::Recv>;

struct AcsRule
{
    std::size_t from;
    AcsOp op;
    std::size_t to;
    friend bool operator==(const AcsRule&, const AcsRule&) = default;
};

class Acs
{
    std::vector<std::string> _states;
    std::vector<std::string> _procs;
    std::vector<std::string> _msgs;
    std::vector<AcsRule> _rules;

public:
    Acs() = default;
    // Throws Duplicate on repeated names, UnknownState/UnknownReference on bad indices.
    Acs(std::vector<std::string> states, std::vector<std::string> procs, std::vector<std::string> msgs,
        std::vector<AcsRule> rules);

    [[nodiscard]] const std::vector<std::string>& states() const { return _states; }
    [[nodiscard]] const std::vector<std::string>& procs() const { return _procs; }
    [[nodiscard]] const std::vector<std::string>& msgs() const { return _msgs; }
    [[nodiscard]] const std::vector<AcsRule>& rules() const { return _rules; }

    [[nodiscard]] std::optional<std::size_t> find_state(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_proc(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_msg(std::string_view name) const;

    [[nodiscard]] std::size_t mailbox_count() const { return _procs.size() * _msgs.size(); }
    [[nodiscard]] std::size_t mailbox(std::size_t proc, std::size_t msg) const { return proc * _msgs.size() + msg; }

    [[nodiscard]] std::string rule_text(const AcsRule& r) const;

    friend bool operator==(const Acs&, const Acs&) = default;
};

// Counter configuration: u[q] processes in state q, v[(p,m)] copies of m in p's mailbox.
struct AcsPlace
{
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v; // indexed by Acs::mailbox(p, m)

    friend bool operator==(const AcsPlace&, const AcsPlace&) = default;
    friend auto operator<=>(const AcsPlace&, const AcsPlace&) = default;
};

[[nodiscard]] AcsPlace zero_place(const Acs& acs);

// Original counter semantics. nullopt when the rule is disabled.
[[nodiscard]] std::optional<AcsPlace> acs_step(const Acs& acs, const AcsPlace& place, const AcsRule& r);

// Origin of a converted BPP symbol.
struct SymbolOrigin
{
    enum class Kind { State, MailIn, MailOut };
    Kind kind;
    std::size_t state = 0;
    std::size_t proc = 0;
    std::size_t msg = 0;
    friend bool operator==(const SymbolOrigin&, const SymbolOrigin&) = default;
};

struct ConvertedBpp
{
    Bpp bpp;
    std::vector<SymbolOrigin> origin;     // per BPP symbol
    std::vector<SymbolId> state_symbol;   // per ACS state
    std::vector<SymbolId> in_symbol;      // per mailbox
    std::vector<SymbolId> out_symbol;     // per mailbox
};

[[nodiscard]] std::string in_symbol_name(const Acs& acs, std::size_t proc, std::size_t msg);
[[nodiscard]] std::string out_symbol_name(const Acs& acs, std::size_t proc, std::size_t msg);

// Over-approximating BPP semantics: one _tau rule per ACS rule; sends and receives
// produce (p,m,in) / (p,m,out) tokens. Throws Duplicate on name collisions.
[[nodiscard]] ConvertedBpp convert(const Acs& acs);

// marking[q] = u[q], marking[in] = v, marking[out] = 0.
[[nodiscard]] Marking convert_place(const Acs& acs, const AcsPlace& place, const ConvertedBpp& layout);

// Rewrites mail(p,m) to (p_m_in - p_m_out) and checks every symbol against the converted BPP.
// Throws UnknownReference.
[[nodiscard]] LinearAtom lift_atom(const LinearAtom& a, const Acs& acs, const ConvertedBpp& layout);
[[nodiscard]] Formula lift_formula(const Formula& f, const Acs& acs, const ConvertedBpp& layout);

// Evaluates an ACS-level atom (states, mail(p,m), or in/out names are rejected) on a place.
[[nodiscard]] bool eval_acs_atom(const LinearAtom& a, const Acs& acs, const AcsPlace& place);

} // namespace bppcheck
