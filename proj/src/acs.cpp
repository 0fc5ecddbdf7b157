#include "bppcheck/acs.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace bppcheck {

static std::optional<std::size_t> find_name(const std::vector<std::string>& names, std::string_view name)
{
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

static void check_unique(const std::vector<std::string>& names, const char* what)
{
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second)
            throw Error(ErrorKind::Duplicate, std::string("duplicate ") + what + " '" + n + "'");
    }
}

Acs::Acs(std::vector<std::string> states, std::vector<std::string> procs, std::vector<std::string> msgs,
         std::vector<AcsRule> rules)
    : _states(std::move(states)), _procs(std::move(procs)), _msgs(std::move(msgs)), _rules(std::move(rules))
{
    check_unique(_states, "state");
    check_unique(_procs, "process");
    check_unique(_msgs, "message");
    auto check_state = [&](std::size_t q) {
        if (q >= _states.size())
            throw Error(ErrorKind::UnknownState, "rule refers to undeclared state #" + std::to_string(q));
    };
    auto check_mailbox = [&](std::size_t p, std::size_t m) {
        if (p >= _procs.size() || m >= _msgs.size())
            throw Error(ErrorKind::UnknownReference, "rule refers to an undeclared process or message");
    };
    for (const auto& r : _rules) {
        check_state(r.from);
        check_state(r.to);
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, acs_op::Spawn>)
                    check_state(op.state);
                else if constexpr (std::is_same_v<T, acs_op::Send> || std::is_same_v<T, acs_op::Recv>)
                    check_mailbox(op.proc, op.msg);
            },
            r.op);
    }
}

std::optional<std::size_t> Acs::find_state(std::string_view name) const { return find_name(_states, name); }
std::optional<std::size_t> Acs::find_proc(std::string_view name) const { return find_name(_procs, name); }
std::optional<std::size_t> Acs::find_msg(std::string_view name) const { return find_name(_msgs, name); }

std::string Acs::rule_text(const AcsRule& r) const
{
    std::string op = std::visit(
        [&](const auto& o) -> std::string {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, acs_op::Nop>)
                return "nop";
            else if constexpr (std::is_same_v<T, acs_op::Spawn>)
                return "new " + _states[o.state];
            else if constexpr (std::is_same_v<T, acs_op::Send>)
                return _procs[o.proc] + "!" + _msgs[o.msg];
            else
                return _procs[o.proc] + "?" + _msgs[o.msg];
        },
        r.op);
    return _states[r.from] + " -> " + op + " -> " + _states[r.to];
}

AcsPlace zero_place(const Acs& acs)
{
    return AcsPlace{std::vector<std::int64_t>(acs.states().size(), 0),
                    std::vector<std::int64_t>(acs.mailbox_count(), 0)};
}

std::optional<AcsPlace> acs_step(const Acs& acs, const AcsPlace& place, const AcsRule& r)
{
    if (place.u.size() != acs.states().size() || place.v.size() != acs.mailbox_count())
        throw Error(ErrorKind::DimensionMismatch, "place does not match the ACS");
    if (place.u[r.from] == 0)
        return std::nullopt;
    AcsPlace next = place;
    next.u[r.from] -= 1;
    next.u[r.to] += 1;
    if (const auto* spawn = std::get_if<acs_op::Spawn>(&r.op)) {
        next.u[spawn->state] += 1;
    } else if (const auto* send = std::get_if<acs_op::Send>(&r.op)) {
        next.v[acs.mailbox(send->proc, send->msg)] += 1;
    } else if (const auto* recv = std::get_if<acs_op::Recv>(&r.op)) {
        auto& slot = next.v[acs.mailbox(recv->proc, recv->msg)];
        if (slot == 0)
            return std::nullopt;
        slot -= 1;
    }
    return next;
}

std::string in_symbol_name(const Acs& acs, std::size_t proc, std::size_t msg)
{
    return acs.procs().at(proc) + "_" + acs.msgs().at(msg) + "_in";
}

std::string out_symbol_name(const Acs& acs, std::size_t proc, std::size_t msg)
{
    return acs.procs().at(proc) + "_" + acs.msgs().at(msg) + "_out";
}

ConvertedBpp convert(const Acs& acs)
{
    std::vector<std::string> symbols = acs.states();
    std::vector<SymbolOrigin> origin;
    for (std::size_t q = 0; q < acs.states().size(); ++q)
        origin.push_back({SymbolOrigin::Kind::State, q, 0, 0});
    for (std::size_t p = 0; p < acs.procs().size(); ++p) {
        for (std::size_t m = 0; m < acs.msgs().size(); ++m) {
            symbols.push_back(in_symbol_name(acs, p, m));
            origin.push_back({SymbolOrigin::Kind::MailIn, 0, p, m});
            symbols.push_back(out_symbol_name(acs, p, m));
            origin.push_back({SymbolOrigin::Kind::MailOut, 0, p, m});
        }
    }
    // Collisions (e.g. a state literally named p_m_in) surface as Duplicate from the Bpp constructor.
    std::vector<RuleDecl> rules;
    rules.reserve(acs.rules().size());
    for (const auto& r : acs.rules()) {
        RuleDecl d{acs.states()[r.from], std::string(kTauAction), {acs.states()[r.to]}};
        if (const auto* spawn = std::get_if<acs_op::Spawn>(&r.op))
            d.rhs.push_back(acs.states()[spawn->state]);
        else if (const auto* send = std::get_if<acs_op::Send>(&r.op))
            d.rhs.push_back(in_symbol_name(acs, send->proc, send->msg));
        else if (const auto* recv = std::get_if<acs_op::Recv>(&r.op))
            d.rhs.push_back(out_symbol_name(acs, recv->proc, recv->msg));
        rules.push_back(std::move(d));
    }

    ConvertedBpp out{Bpp(std::move(symbols), rules), std::move(origin), {}, {}, {}};
    for (const auto& q : acs.states())
        out.state_symbol.push_back(out.bpp.symbol(q));
    for (std::size_t p = 0; p < acs.procs().size(); ++p) {
        for (std::size_t m = 0; m < acs.msgs().size(); ++m) {
            out.in_symbol.push_back(out.bpp.symbol(in_symbol_name(acs, p, m)));
            out.out_symbol.push_back(out.bpp.symbol(out_symbol_name(acs, p, m)));
        }
    }
    return out;
}

Marking convert_place(const Acs& acs, const AcsPlace& place, const ConvertedBpp& layout)
{
    if (place.u.size() != acs.states().size() || place.v.size() != acs.mailbox_count() ||
        layout.state_symbol.size() != acs.states().size() || layout.in_symbol.size() != acs.mailbox_count())
        throw Error(ErrorKind::DimensionMismatch, "place does not match the converted ACS layout");
    Marking m(layout.bpp.dimension());
    for (std::size_t q = 0; q < place.u.size(); ++q)
        m.set(layout.state_symbol[q], place.u[q]);
    for (std::size_t b = 0; b < place.v.size(); ++b) {
        m.set(layout.in_symbol[b], place.v[b]);
        m.set(layout.out_symbol[b], 0);
    }
    return m;
}

LinearAtom lift_atom(const LinearAtom& a, const Acs& acs, const ConvertedBpp& layout)
{
    LinearAtom out{{}, a.cmp, a.bound};
    for (const auto& t : a.terms) {
        if (const auto* name = std::get_if<std::string>(&t.ref)) {
            if (!layout.bpp.find_symbol(*name))
                throw Error(ErrorKind::UnknownReference, "unknown state or mailbox symbol '" + *name + "'");
            out.terms.push_back(t);
            continue;
        }
        const auto& mb = std::get<MailboxRef>(t.ref);
        auto p = acs.find_proc(mb.proc);
        auto m = acs.find_msg(mb.msg);
        if (!p || !m)
            throw Error(ErrorKind::UnknownReference, "unknown mailbox mail(" + mb.proc + "," + mb.msg + ")");
        out.terms.push_back(AtomTerm{in_symbol_name(acs, *p, *m), t.coeff});
        out.terms.push_back(AtomTerm{out_symbol_name(acs, *p, *m), -t.coeff});
    }
    return out;
}

Formula lift_formula(const Formula& f, const Acs& acs, const ConvertedBpp& layout)
{
    using F = Formula;
    switch (f.op()) {
    case Op::Atom: return F::atom(lift_atom(f.atom(), acs, layout));
    case Op::Not: return F::negation(lift_formula(f.child(0), acs, layout));
    case Op::And: return F::conjunction(lift_formula(f.child(0), acs, layout), lift_formula(f.child(1), acs, layout));
    case Op::Or: return F::disjunction(lift_formula(f.child(0), acs, layout), lift_formula(f.child(1), acs, layout));
    case Op::Imp: return F::implication(lift_formula(f.child(0), acs, layout), lift_formula(f.child(1), acs, layout));
    case Op::ENext: return F::exists_next(f.action(), lift_formula(f.child(0), acs, layout));
    case Op::ANext: return F::forall_next(f.action(), lift_formula(f.child(0), acs, layout));
    case Op::EG: return F::exists_globally(lift_formula(f.child(0), acs, layout));
    case Op::AF: return F::forall_finally(lift_formula(f.child(0), acs, layout));
    case Op::EF: return F::exists_finally(lift_formula(f.child(0), acs, layout));
    }
    return f;
}

bool eval_acs_atom(const LinearAtom& a, const Acs& acs, const AcsPlace& place)
{
    std::int64_t sum = 0;
    for (const auto& t : a.terms) {
        if (const auto* name = std::get_if<std::string>(&t.ref)) {
            auto q = acs.find_state(*name);
            if (!q)
                throw Error(ErrorKind::UnknownReference, "'" + *name + "' is not an ACS state");
            sum += t.coeff * place.u[*q];
        } else {
            const auto& mb = std::get<MailboxRef>(t.ref);
            auto p = acs.find_proc(mb.proc);
            auto m = acs.find_msg(mb.msg);
            if (!p || !m)
                throw Error(ErrorKind::UnknownReference, "unknown mailbox mail(" + mb.proc + "," + mb.msg + ")");
            sum += t.coeff * place.v[acs.mailbox(*p, *m)];
        }
    }
    return compare(sum, a.cmp, a.bound);
}

} // namespace bppcheck
