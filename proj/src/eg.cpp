#include "bppcheck/eg.hpp"

#include "bppcheck/error.hpp"

namespace bppcheck {

using smt::LinExpr;
using smt::Term;

StateVars concrete_state(const Marking& m)
{
    StateVars s;
    for (auto c : m.counts())
        s.push_back(LinExpr::constant(c));
    return s;
}

std::vector<std::int64_t> parikh_minus(const Bpp& bpp, SymbolId lhs, std::span<const SymbolId> rhs)
{
    if (lhs.value >= bpp.dimension())
        throw Error(ErrorKind::UnknownSymbol, "symbol index " + std::to_string(lhs.value) + " out of range");
    auto p = parikh(bpp, rhs);
    std::vector<std::int64_t> out(p.counts().begin(), p.counts().end());
    out[lhs.value] -= 1;
    return out;
}

Term t_minus(const Bpp& bpp, const StateVars& s, const StateVars& t, const Rule& r)
{
    if (s.size() != bpp.dimension() || t.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "state vector dimension mismatch");
    auto delta = parikh_minus(bpp, r.lhs, r.rhs);
    std::vector<Term> eqs;
    for (std::size_t i = 0; i < delta.size(); ++i)
        eqs.push_back(Term::compare(LinExpr(s[i]).add(delta[i]), Cmp::Eq, t[i]));
    return Term::conjunction(std::move(eqs));
}

static Term fires(const Bpp& bpp, const StateVars& s, const StateVars& t, const Rule& r)
{
    return Term::conjunction(
        {Term::compare(s[r.lhs.value], Cmp::Ge, LinExpr::constant(1)), t_minus(bpp, s, t, r)});
}

Term trans_constraint(const Bpp& bpp, const StateVars& s, const StateVars& t, std::string_view action)
{
    std::vector<Term> alts;
    for (const auto& r : bpp.rules()) {
        if (r.action == action)
            alts.push_back(fires(bpp, s, t, r));
    }
    return Term::disjunction(std::move(alts));
}

Term path_constraint(const Bpp& bpp, const std::vector<StateVars>& u)
{
    std::vector<Term> steps;
    for (std::size_t j = 1; j < u.size(); ++j) {
        std::vector<Term> alts;
        for (const auto& r : bpp.rules())
            alts.push_back(fires(bpp, u[j - 1], u[j], r));
        steps.push_back(Term::disjunction(std::move(alts)));
    }
    return Term::conjunction(std::move(steps));
}

std::vector<std::string> StateAllocator::names(const std::string& prefix) const
{
    std::vector<std::string> out;
    for (const auto& sym : _bpp.symbols())
        out.push_back(prefix + "_" + sym);
    return out;
}

std::vector<std::string> StateAllocator::target()
{
    _target_vars += _bpp.dimension();
    return names("s" + std::to_string(_next_target++));
}

std::vector<std::string> StateAllocator::position()
{
    _path_vars += _bpp.dimension();
    return names("u" + std::to_string(_next_position++));
}

Term trans(const Formula& f, const StateVars& s, int k, const Bpp& bpp, StateAllocator& alloc)
{
    switch (f.op()) {
    case Op::Atom:
        return encode_atom(f.atom(), bpp, s);
    case Op::Not:
        return Term::negation(trans(f.child(0), s, k, bpp, alloc));
    case Op::And: {
        Term a = trans(f.child(0), s, k, bpp, alloc);
        Term b = trans(f.child(1), s, k, bpp, alloc);
        return Term::conjunction({a, b});
    }
    case Op::ENext: {
        if (k < 1)
            return Term::falsity();
        auto names = alloc.target();
        auto t = variables_of(names);
        Term step = trans_constraint(bpp, s, t, f.action());
        Term body = trans(f.child(0), t, k, bpp, alloc);
        return Term::exists(std::move(names), Term::conjunction({step, body}));
    }
    case Op::EG: {
        std::vector<std::string> bound;
        std::vector<StateVars> u;
        for (int j = 0; j <= k; ++j) {
            auto names = alloc.position();
            u.push_back(variables_of(names));
            bound.insert(bound.end(), names.begin(), names.end());
        }
        std::vector<Term> parts{path_constraint(bpp, u)};
        for (std::size_t i = 0; i < s.size(); ++i)
            parts.push_back(Term::compare(u[0][i], Cmp::Eq, s[i]));
        for (const auto& pos : u)
            parts.push_back(trans(f.child(0), pos, k, bpp, alloc));
        return Term::exists(std::move(bound), Term::conjunction(std::move(parts)));
    }
    default:
        throw Error(ErrorKind::MixedFormula,
                    std::string("operator not supported by the bounded EG engine: ") + to_string(f.op()));
    }
}

EgEncoding encode_eg(const Bpp& bpp, const Marking& init, const CoreFormula& f, int k)
{
    if (k < 0)
        throw Error(ErrorKind::IllFormed, "negative bound k");
    if (init.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "initial marking dimension mismatch");
    if (classify(f) == FormulaClass::Mixed || f.formula().contains(Op::EF)) {
        std::string why = classify(f) == FormulaClass::Mixed ? mixed_reason(f) : "formula contains EF";
        throw Error(ErrorKind::MixedFormula, "not an EG-formula: " + why);
    }
    resolve(f.formula(), bpp);
    StateAllocator alloc(bpp);
    Term t = trans(f.formula(), concrete_state(init), k, bpp, alloc);
    auto hoisted = smt::hoist_existentials(t);

    EgEncoding enc;
    enc.path_vars = alloc.path_vars();
    enc.target_vars = alloc.target_vars();
    enc.bound_vars = smt::bound_variables(hoisted.body).size();
    enc.script = smt::to_smtlib(hoisted.body, hoisted.vars, true);
    return enc;
}

EgOutcome check_eg(const Bpp& bpp, const Marking& init, const CoreFormula& f, int k, const EgOptions& options)
{
    EgOutcome out;
    out.encoding = encode_eg(bpp, init, f, k);
    const auto& script = out.encoding.script;
    if (options.on_script)
        options.on_script(0, script);
    out.outcome = smt::run_solver(script, options.solver);

    auto& v = out.verdict;
    v.engine = Engine::EgBounded;
    v.k = k;
    v.stats.n_vars = script.declarations.size() + out.encoding.bound_vars;
    v.stats.n_asserts = smt::conjunct_count(script.assertion);
    v.stats.solver_ms = out.outcome.wall_ms;
    v.stats.solver_calls = 1;
    switch (out.outcome.status) {
    case smt::Status::Sat:
        v.result = Result::Holds;
        break;
    case smt::Status::Unsat:
        v.result = Result::NotHolds;
        break;
    case smt::Status::Unknown:
        v.result = Result::Unknown;
        break;
    }
    if (v.result == Result::Holds && out.outcome.model && !script.declarations.empty()) {
        if (!smt::has_quantifier(script.assertion) && !smt::evaluate(script.assertion, *out.outcome.model))
            throw Error(ErrorKind::ProtocolError, "solver model does not satisfy the bounded encoding");
        Witness w;
        for (const auto& name : script.declarations)
            w.emplace_back(name, out.outcome.model->at(name));
        v.witness = std::move(w);
    }
    return out;
}

} // namespace bppcheck
