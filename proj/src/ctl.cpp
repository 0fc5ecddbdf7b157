#include "bppcheck/ctl.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>

namespace bppcheck {

const char* to_string(Cmp cmp)
{
    switch (cmp) {
    case Cmp::Ge: return ">=";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Lt: return "<";
    case Cmp::Eq: return "==";
    case Cmp::Ne: return "!=";
    }
    return "?";
}

bool compare(std::int64_t lhs, Cmp cmp, std::int64_t rhs)
{
    switch (cmp) {
    case Cmp::Ge: return lhs >= rhs;
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ne: return lhs != rhs;
    }
    return false;
}

Cmp negate(Cmp cmp)
{
    switch (cmp) {
    case Cmp::Ge: return Cmp::Lt;
    case Cmp::Le: return Cmp::Gt;
    case Cmp::Gt: return Cmp::Le;
    case Cmp::Lt: return Cmp::Ge;
    case Cmp::Eq: return Cmp::Ne;
    case Cmp::Ne: return Cmp::Eq;
    }
    return cmp;
}

// Comparison with both sides multiplied by -1.
static Cmp mirror(Cmp cmp)
{
    switch (cmp) {
    case Cmp::Ge: return Cmp::Le;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Gt: return Cmp::Lt;
    case Cmp::Lt: return Cmp::Gt;
    default: return cmp;
    }
}

const char* to_string(Op op)
{
    switch (op) {
    case Op::Atom: return "Atom";
    case Op::Not: return "Neg";
    case Op::And: return "Conj";
    case Op::Or: return "Disj";
    case Op::Imp: return "Imp";
    case Op::ENext: return "EX";
    case Op::ANext: return "AX";
    case Op::EG: return "EG";
    case Op::AF: return "AF";
    case Op::EF: return "EF";
    }
    return "?";
}

const char* to_string(FormulaClass c)
{
    switch (c) {
    case FormulaClass::Ef: return "ef";
    case FormulaClass::Eg: return "eg";
    case FormulaClass::Mixed: return "mixed";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::atom(LinearAtom a)
{
    return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(a), {}, {}}));
}

Formula Formula::negation(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Op::And, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disjunction(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Op::Or, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::implication(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{Op::Imp, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::exists_next(std::string action, Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::ENext, {}, std::move(action), {std::move(f)}}));
}

Formula Formula::forall_next(std::string action, Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::ANext, {}, std::move(action), {std::move(f)}}));
}

Formula Formula::exists_globally(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::EG, {}, {}, {std::move(f)}}));
}

Formula Formula::forall_finally(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::AF, {}, {}, {std::move(f)}}));
}

Formula Formula::exists_finally(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Op::EF, {}, {}, {std::move(f)}}));
}

Op Formula::op() const { return _node->op; }

const LinearAtom& Formula::atom() const
{
    if (_node->op != Op::Atom)
        throw Error(ErrorKind::IllFormed, "not an atom");
    return _node->atom;
}

const std::string& Formula::action() const { return _node->action; }

std::size_t Formula::arity() const { return _node->kids.size(); }

const Formula& Formula::child(std::size_t i) const { return _node->kids.at(i); }

std::size_t Formula::depth() const
{
    std::size_t d = 0;
    for (const auto& k : _node->kids)
        d = std::max(d, k.depth());
    return _node->op == Op::Atom ? 0 : d + 1;
}

bool Formula::contains(Op op) const
{
    if (_node->op == op)
        return true;
    return std::any_of(_node->kids.begin(), _node->kids.end(),
                       [op](const Formula& k) { return k.contains(op); });
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a._node == b._node)
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    return x.op == y.op && x.atom == y.atom && x.action == y.action && x.kids == y.kids;
}

// ---------------------------------------------------------------------------
// Desugaring and classification

bool is_core(const Formula& f)
{
    switch (f.op()) {
    case Op::Or:
    case Op::Imp:
    case Op::AF:
    case Op::ANext: return false;
    default: break;
    }
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (!is_core(f.child(i)))
            return false;
    }
    return true;
}

CoreFormula CoreFormula::from(Formula f)
{
    if (!is_core(f))
        throw Error(ErrorKind::IllFormed, "formula contains Disj/Imp/AF/AX; desugar it first");
    return CoreFormula(std::move(f));
}

static Formula desugar_rec(const Formula& f)
{
    using F = Formula;
    switch (f.op()) {
    case Op::Atom: return f;
    case Op::Not: return F::negation(desugar_rec(f.child(0)));
    case Op::And: return F::conjunction(desugar_rec(f.child(0)), desugar_rec(f.child(1)));
    case Op::Or:
        return F::negation(F::conjunction(F::negation(desugar_rec(f.child(0))),
                                          F::negation(desugar_rec(f.child(1)))));
    case Op::Imp:
        return F::negation(
            F::conjunction(desugar_rec(f.child(0)), F::negation(desugar_rec(f.child(1)))));
    case Op::ENext: return F::exists_next(f.action(), desugar_rec(f.child(0)));
    case Op::ANext:
        return F::negation(F::exists_next(f.action(), F::negation(desugar_rec(f.child(0)))));
    case Op::EG: return F::exists_globally(desugar_rec(f.child(0)));
    case Op::AF: return F::negation(F::exists_globally(F::negation(desugar_rec(f.child(0)))));
    case Op::EF: return F::exists_finally(desugar_rec(f.child(0)));
    }
    return f;
}

CoreFormula desugar(const Formula& f) { return CoreFormula(desugar_rec(f)); }

bool is_propositional(const Formula& f)
{
    switch (f.op()) {
    case Op::Atom: return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Imp:
        for (std::size_t i = 0; i < f.arity(); ++i) {
            if (!is_propositional(f.child(i)))
                return false;
        }
        return true;
    default: return false;
    }
}

static bool is_ef_shaped(const Formula& f)
{
    switch (f.op()) {
    case Op::Atom: return true;
    case Op::Not: return is_ef_shaped(f.child(0));
    case Op::And: return is_ef_shaped(f.child(0)) && is_ef_shaped(f.child(1));
    case Op::EF: return is_propositional(f.child(0));
    default: return false;
    }
}

FormulaClass classify(const CoreFormula& cf)
{
    const auto& f = cf.formula();
    if (is_ef_shaped(f))
        return FormulaClass::Ef;
    if (!f.contains(Op::EF))
        return FormulaClass::Eg;
    return FormulaClass::Mixed;
}

static bool ef_contains(const Formula& f, Op op)
{
    if (f.op() == Op::EF)
        return f.child(0).contains(op);
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (ef_contains(f.child(i), op))
            return true;
    }
    return false;
}

std::string mixed_reason(const CoreFormula& cf)
{
    if (classify(cf) != FormulaClass::Mixed)
        return {};
    const auto& f = cf.formula();
    if (ef_contains(f, Op::ENext))
        return "EX occurs under EF; the reachability engine constrains only the reached marking. "
               "Rewrite the property as an EG-class formula and use the bounded engine (--mode eg)";
    if (ef_contains(f, Op::EF))
        return "nested EF operators are not supported";
    if (ef_contains(f, Op::EG))
        return "EG occurs under EF; formulas must be EF-class or EG-class";
    return "formula mixes EF with EG or EX; formulas must be EF-class or EG-class";
}

// ---------------------------------------------------------------------------
// Atom evaluation

std::int64_t atom_value(const LinearAtom& a, const Marking& m, const Bpp& bpp)
{
    if (m.size() != bpp.dimension())
        throw Error(ErrorKind::DimensionMismatch, "marking dimension does not match BPP");
    std::int64_t sum = 0;
    for (const auto& t : a.terms) {
        const auto* name = std::get_if<std::string>(&t.ref);
        if (!name) {
            const auto& mb = std::get<MailboxRef>(t.ref);
            throw Error(ErrorKind::UnknownSymbol,
                        "mail(" + mb.proc + "," + mb.msg + ") is only valid for ACS properties");
        }
        sum += t.coeff * m[bpp.symbol(*name)];
    }
    return sum;
}

bool eval_atomic(const LinearAtom& a, const Marking& m, const Bpp& bpp)
{
    return compare(atom_value(a, m, bpp), a.cmp, a.bound);
}

bool eval_propositional(const Formula& f, const Marking& m, const Bpp& bpp)
{
    switch (f.op()) {
    case Op::Atom: return eval_atomic(f.atom(), m, bpp);
    case Op::Not: return !eval_propositional(f.child(0), m, bpp);
    case Op::And: return eval_propositional(f.child(0), m, bpp) && eval_propositional(f.child(1), m, bpp);
    case Op::Or: return eval_propositional(f.child(0), m, bpp) || eval_propositional(f.child(1), m, bpp);
    case Op::Imp: return !eval_propositional(f.child(0), m, bpp) || eval_propositional(f.child(1), m, bpp);
    default: throw Error(ErrorKind::IllFormed, std::string("temporal operator ") + to_string(f.op()) +
                                                   " in a propositional context");
    }
}

void resolve(const Formula& f, const Bpp& bpp)
{
    if (f.op() == Op::Atom) {
        for (const auto& t : f.atom().terms) {
            if (const auto* name = std::get_if<std::string>(&t.ref))
                (void)bpp.symbol(*name);
            else
                throw Error(ErrorKind::UnknownSymbol, "mail(...) terms are only valid for ACS properties");
        }
        return;
    }
    if ((f.op() == Op::ENext || f.op() == Op::ANext) && !bpp.has_action(f.action()))
        throw Error(ErrorKind::UnknownLabel, "unknown action label '" + f.action() + "'");
    for (std::size_t i = 0; i < f.arity(); ++i)
        resolve(f.child(i), bpp);
}

// ---------------------------------------------------------------------------
// Printing

static std::string term_text(const AtomTerm& t, std::int64_t magnitude)
{
    std::string s;
    if (const auto* name = std::get_if<std::string>(&t.ref)) {
        s = *name;
    } else {
        const auto& mb = std::get<MailboxRef>(t.ref);
        s = "mail(" + mb.proc + "," + mb.msg + ")";
    }
    if (magnitude != 1)
        s += "*" + std::to_string(magnitude);
    return s;
}

std::string to_text(const LinearAtom& input)
{
    LinearAtom a = input;
    if (a.terms.empty())
        throw Error(ErrorKind::IllFormed, "atom without terms cannot be printed");
    auto first_nonneg = std::find_if(a.terms.begin(), a.terms.end(), [](const AtomTerm& t) { return t.coeff >= 0; });
    if (first_nonneg == a.terms.end()) {
        for (auto& t : a.terms)
            t.coeff = -t.coeff;
        a.cmp = mirror(a.cmp);
        a.bound = -a.bound;
    } else {
        std::rotate(a.terms.begin(), first_nonneg, first_nonneg + 1);
    }
    if (a.bound < 0)
        throw Error(ErrorKind::IllFormed, "atom with a negative bound cannot be printed");
    std::string s;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto& t = a.terms[i];
        if (i > 0)
            s += t.coeff < 0 ? " - " : " + ";
        s += term_text(t, t.coeff < 0 ? -t.coeff : t.coeff);
    }
    return s + " " + to_string(a.cmp) + " " + std::to_string(a.bound);
}

std::string to_text(const Formula& f)
{
    switch (f.op()) {
    case Op::Atom: return to_text(f.atom());
    case Op::Not:
    case Op::EG:
    case Op::AF:
    case Op::EF: return std::string(to_string(f.op())) + "(" + to_text(f.child(0)) + ")";
    case Op::And:
    case Op::Or:
    case Op::Imp:
        return std::string(to_string(f.op())) + "(" + to_text(f.child(0)) + ", " + to_text(f.child(1)) + ")";
    case Op::ENext:
    case Op::ANext:
        return std::string(to_string(f.op())) + "(" + f.action() + ", " + to_text(f.child(0)) + ")";
    }
    return {};
}

} // namespace bppcheck
