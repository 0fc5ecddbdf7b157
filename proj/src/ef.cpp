#include "bppcheck/ef.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bppcheck {

using smt::LinExpr;
using smt::Term;

std::vector<std::string> EfVars::all() const
{
    std::vector<std::string> out;
    out.reserve(x.size() + y.size() + z.size());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

EfVars ef_vars(const Bpp& bpp)
{
    EfVars v;
    for (const auto& s : bpp.symbols()) {
        v.x.push_back("x_" + s);
        v.z.push_back("z_" + s);
    }
    for (std::size_t i = 0; i < bpp.rules().size(); ++i)
        v.y.push_back("y_" + std::to_string(i + 1));
    return v;
}

std::vector<LinExpr> variables_of(const std::vector<std::string>& names)
{
    std::vector<LinExpr> out;
    out.reserve(names.size());
    for (const auto& n : names)
        out.push_back(LinExpr::var(n));
    return out;
}

static std::int64_t occurrences(const Rule& r, SymbolId s)
{
    return std::count(r.rhs.begin(), r.rhs.end(), s);
}

ReachabilityEncoding encode_reachability(const Bpp& bpp, const Marking& init)
{
    if (init.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "initial marking has dimension " + std::to_string(init.size()) +
                                                      ", expected " + std::to_string(bpp.dimension()));
    ReachabilityEncoding enc{ef_vars(bpp), Term::truth(), Term::truth(), Term::truth()};
    const auto& v = enc.vars;
    const auto& rules = bpp.rules();
    const std::size_t n = bpp.dimension();
    auto zero = LinExpr::constant(0);

    std::vector<Term> flow;
    for (std::size_t p = 0; p < n; ++p)
        flow.push_back(Term::compare(LinExpr::var(v.x[p]), Cmp::Ge, zero));
    for (std::size_t r = 0; r < rules.size(); ++r)
        flow.push_back(Term::compare(LinExpr::var(v.y[r]), Cmp::Ge, zero));
    for (std::size_t p = 0; p < n; ++p) {
        SymbolId sym{static_cast<std::uint32_t>(p)};
        LinExpr lhs = LinExpr::constant(init[sym]);
        for (std::size_t r = 0; r < rules.size(); ++r) {
            std::int64_t delta = occurrences(rules[r], sym) - (rules[r].lhs == sym ? 1 : 0);
            lhs.add(delta, v.y[r]);
        }
        flow.push_back(Term::compare(std::move(lhs), Cmp::Eq, LinExpr::var(v.x[p])));
    }

    std::vector<Term> conn;
    for (std::size_t p = 0; p < n; ++p) {
        if (init.at(p) > 0)
            conn.push_back(Term::compare(LinExpr::var(v.z[p]), Cmp::Eq, LinExpr::constant(1)));
    }
    for (std::size_t r = 0; r < rules.size(); ++r) {
        conn.push_back(Term::disjunction({
            Term::compare(LinExpr::var(v.y[r]), Cmp::Eq, zero),
            Term::compare(LinExpr::var(v.z[rules[r].lhs.value]), Cmp::Gt, zero),
        }));
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (init.at(p) > 0)
            continue;
        SymbolId sym{static_cast<std::uint32_t>(p)};
        std::vector<Term> unused{Term::compare(LinExpr::var(v.z[p]), Cmp::Eq, zero)};
        std::vector<Term> branches;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            if (occurrences(rules[r], sym) == 0)
                continue;
            const auto& zy = v.z[rules[r].lhs.value];
            unused.push_back(Term::compare(LinExpr::var(v.y[r]), Cmp::Eq, zero));
            branches.push_back(Term::conjunction({
                Term::compare(LinExpr::var(v.z[p]), Cmp::Eq, LinExpr::var(zy).add(1)),
                Term::compare(LinExpr::var(v.y[r]), Cmp::Gt, zero),
                Term::compare(LinExpr::var(zy), Cmp::Gt, zero),
            }));
        }
        branches.insert(branches.begin(), Term::conjunction(std::move(unused)));
        conn.push_back(Term::disjunction(std::move(branches)));
    }
    for (std::size_t p = 0; p < n; ++p) {
        conn.push_back(Term::disjunction({
            Term::compare(LinExpr::var(v.x[p]), Cmp::Eq, zero),
            Term::compare(LinExpr::var(v.z[p]), Cmp::Gt, zero),
        }));
    }

    enc.flow = Term::conjunction(flow);
    enc.connectivity = Term::conjunction(conn);
    enc.constraint = Term::conjunction({enc.flow, enc.connectivity});
    return enc;
}

Term encode_atom(const LinearAtom& a, const Bpp& bpp, const std::vector<LinExpr>& state)
{
    LinExpr lhs;
    for (const auto& t : a.terms) {
        const auto* name = std::get_if<std::string>(&t.ref);
        if (!name)
            throw Error(ErrorKind::UnknownSymbol, "mailbox term in an atom over a plain BPP: " + to_text(a));
        lhs.add(t.coeff, state.at(bpp.symbol(*name).value));
    }
    return Term::compare(std::move(lhs), a.cmp, LinExpr::constant(a.bound));
}

Term encode_propositional(const Formula& f, const Bpp& bpp, const std::vector<LinExpr>& state)
{
    switch (f.op()) {
    case Op::Atom:
        return encode_atom(f.atom(), bpp, state);
    case Op::Not:
        return Term::negation(encode_propositional(f.child(0), bpp, state));
    case Op::And:
        return Term::conjunction(
            {encode_propositional(f.child(0), bpp, state), encode_propositional(f.child(1), bpp, state)});
    case Op::Or:
        return Term::disjunction(
            {encode_propositional(f.child(0), bpp, state), encode_propositional(f.child(1), bpp, state)});
    case Op::Imp:
        return Term::disjunction({Term::negation(encode_propositional(f.child(0), bpp, state)),
                                  encode_propositional(f.child(1), bpp, state)});
    default:
        throw Error(ErrorKind::IllFormed, std::string("temporal operator in a state formula: ") + to_string(f.op()));
    }
}

const char* to_string(RealizationStatus s)
{
    switch (s) {
    case RealizationStatus::Realized:
        return "realized";
    case RealizationStatus::Unrealizable:
        return "unrealizable";
    case RealizationStatus::BudgetExceeded:
        return "budget-exceeded";
    }
    return "unrealizable";
}

Realization realize_firing_counts(const Bpp& bpp, const Marking& init, const std::vector<std::int64_t>& counts,
                                  std::size_t node_budget)
{
    const auto& rules = bpp.rules();
    if (counts.size() != rules.size())
        throw Error(ErrorKind::DimensionMismatch, "firing counts for " + std::to_string(counts.size()) +
                                                      " rules, expected " + std::to_string(rules.size()));
    if (init.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "initial marking dimension mismatch");
    if (std::any_of(counts.begin(), counts.end(), [](std::int64_t c) { return c < 0; }))
        throw Error(ErrorKind::IllFormed, "negative firing count");

    std::vector<std::int64_t> m(init.counts().begin(), init.counts().end());
    std::vector<std::int64_t> target = m;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        target[rules[r].lhs.value] -= counts[r];
        for (auto s : rules[r].rhs)
            target[s.value] += counts[r];
    }
    Realization out;
    if (std::any_of(target.begin(), target.end(), [](std::int64_t c) { return c < 0; }))
        return out;

    std::vector<std::int64_t> remaining = counts;
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    std::set<std::vector<std::int64_t>> failed;
    std::vector<std::size_t> frames{0};
    std::vector<RuleId> seq;
    std::size_t nodes = 0;

    auto apply = [&](std::size_t r, int sign) {
        m[rules[r].lhs.value] -= sign;
        for (auto s : rules[r].rhs)
            m[s.value] += sign;
        remaining[r] -= sign;
    };

    while (!frames.empty()) {
        if (static_cast<std::int64_t>(seq.size()) == total) {
            out.status = RealizationStatus::Realized;
            out.sequence = std::move(seq);
            out.final_marking = Marking(std::move(m));
            return out;
        }
        auto& next = frames.back();
        if (next == 0) {
            if (++nodes > node_budget) {
                out.status = RealizationStatus::BudgetExceeded;
                return out;
            }
            if (failed.count(remaining)) {
                frames.pop_back();
                apply(seq.back().value, -1);
                seq.pop_back();
                continue;
            }
        }
        std::size_t r = next;
        while (r < rules.size() && (remaining[r] == 0 || m[rules[r].lhs.value] < 1))
            ++r;
        if (r < rules.size()) {
            next = r + 1;
            apply(r, 1);
            seq.push_back(RuleId{static_cast<std::uint32_t>(r)});
            frames.push_back(0);
        } else {
            failed.insert(remaining);
            frames.pop_back();
            if (!seq.empty()) {
                apply(seq.back().value, -1);
                seq.pop_back();
            }
        }
    }
    return out;
}

namespace {

struct EfRun
{
    const Bpp& bpp;
    const Marking& init;
    const EfOptions& options;
    ReachabilityEncoding encoding;
    std::vector<EfNodeResult> nodes;
    VerdictStats stats;

    Result decide(const Formula& psi)
    {
        auto state = variables_of(encoding.vars.x);
        Term assertion = Term::conjunction({encoding.constraint, encode_propositional(psi, bpp, state)});
        auto script = smt::to_smtlib(assertion, encoding.vars.all(), true);
        if (options.on_script)
            options.on_script(nodes.size(), script);
        auto outcome = smt::run_solver(script, options.solver);

        stats.n_vars += script.declarations.size();
        stats.n_asserts += smt::conjunct_count(assertion);
        stats.solver_ms += outcome.wall_ms;
        stats.solver_calls += 1;

        EfNodeResult node{psi, script, outcome, false, std::nullopt};
        Result r = Result::Unknown;
        if (outcome.status == smt::Status::Sat) {
            r = Result::Holds;
            if (outcome.model) {
                if (!smt::evaluate(assertion, *outcome.model))
                    throw Error(ErrorKind::ProtocolError, "solver model does not satisfy the reachability constraints");
                node.model_verified = true;
                if (options.realize) {
                    std::vector<std::int64_t> y;
                    for (const auto& name : encoding.vars.y)
                        y.push_back(outcome.model->at(name));
                    node.realization = realize_firing_counts(bpp, init, y, options.realization_budget);
                }
            }
        } else if (outcome.status == smt::Status::Unsat) {
            r = Result::NotHolds;
        }
        nodes.push_back(std::move(node));
        return r;
    }

    Result eval(const Formula& f)
    {
        switch (f.op()) {
        case Op::Atom:
            return eval_atomic(f.atom(), init, bpp) ? Result::Holds : Result::NotHolds;
        case Op::Not:
            return kleene_not(eval(f.child(0)));
        case Op::And: {
            Result a = eval(f.child(0));
            Result b = eval(f.child(1));
            return kleene_and(a, b);
        }
        case Op::EF:
            return decide(f.child(0));
        default:
            throw Error(ErrorKind::MixedFormula, std::string("operator not supported by the EF engine: ") +
                                                     to_string(f.op()));
        }
    }
};

} // namespace

EfOutcome check_ef(const Bpp& bpp, const Marking& init, const CoreFormula& f, const EfOptions& options)
{
    if (auto c = classify(f); c != FormulaClass::Ef) {
        std::string why = c == FormulaClass::Mixed ? mixed_reason(f) : "formula contains EG or EX, use --mode eg";
        throw Error(ErrorKind::MixedFormula, "not an EF-formula: " + why);
    }
    resolve(f.formula(), bpp);
    EfRun run{bpp, init, options, encode_reachability(bpp, init), {}, {}};
    Result result = run.eval(f.formula());

    EfOutcome out;
    out.verdict.result = result;
    out.verdict.engine = Engine::Ef;
    out.verdict.stats = run.stats;
    if (result == Result::Holds) {
        for (const auto& node : run.nodes) {
            if (node.outcome.model) {
                Witness w;
                for (const auto& name : node.script.declarations)
                    w.emplace_back(name, node.outcome.model->at(name));
                out.verdict.witness = std::move(w);
                break;
            }
        }
    }
    out.nodes = std::move(run.nodes);
    return out;
}

} // namespace bppcheck
