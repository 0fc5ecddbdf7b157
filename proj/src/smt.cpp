#include "bppcheck/smt.hpp"

#include "bppcheck/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace bppcheck::smt {

// ---------------------------------------------------------------------------
// LinExpr

LinExpr LinExpr::var(std::string name)
{
    LinExpr e;
    e.add(1, std::move(name));
    return e;
}

LinExpr LinExpr::constant(std::int64_t c)
{
    LinExpr e;
    e._constant = c;
    return e;
}

LinExpr& LinExpr::add(std::int64_t coeff, std::string name)
{
    auto it = std::find_if(_terms.begin(), _terms.end(), [&](const auto& t) { return t.second == name; });
    if (it == _terms.end()) {
        if (coeff != 0)
            _terms.emplace_back(coeff, std::move(name));
        return *this;
    }
    it->first += coeff;
    if (it->first == 0)
        _terms.erase(it);
    return *this;
}

LinExpr& LinExpr::add(std::int64_t c)
{
    _constant += c;
    return *this;
}

LinExpr& LinExpr::add(std::int64_t factor, const LinExpr& other)
{
    for (const auto& [c, v] : other._terms)
        add(factor * c, v);
    _constant += factor * other._constant;
    return *this;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return std::move(a.add(1, b)); }
LinExpr operator-(LinExpr a, const LinExpr& b) { return std::move(a.add(-1, b)); }

// ---------------------------------------------------------------------------
// Term

Term Term::truth()
{
    static const Term t(std::make_shared<const Node>(Node{Kind::True, {}, Cmp::Ge, {}, {}, {}}));
    return t;
}

Term Term::falsity()
{
    static const Term t(std::make_shared<const Node>(Node{Kind::False, {}, Cmp::Ge, {}, {}, {}}));
    return t;
}

Term Term::compare(LinExpr lhs, Cmp cmp, LinExpr rhs)
{
    if (lhs.is_constant() && rhs.is_constant())
        return bppcheck::compare(lhs.constant_part(), cmp, rhs.constant_part()) ? truth() : falsity();
    return Term(std::make_shared<const Node>(Node{Kind::Compare, std::move(lhs), cmp, std::move(rhs), {}, {}}));
}

Term Term::negation(Term t)
{
    if (t.is_true())
        return falsity();
    if (t.is_false())
        return truth();
    return Term(std::make_shared<const Node>(Node{Kind::Not, {}, Cmp::Ge, {}, {std::move(t)}, {}}));
}

Term Term::conjunction(std::vector<Term> ts)
{
    std::vector<Term> kids;
    for (auto& t : ts) {
        if (t.is_false())
            return falsity();
        if (t.is_true())
            continue;
        if (t.kind() == Kind::And)
            kids.insert(kids.end(), t.kids().begin(), t.kids().end());
        else
            kids.push_back(std::move(t));
    }
    if (kids.empty())
        return truth();
    if (kids.size() == 1)
        return kids.front();
    return Term(std::make_shared<const Node>(Node{Kind::And, {}, Cmp::Ge, {}, std::move(kids), {}}));
}

Term Term::disjunction(std::vector<Term> ts)
{
    std::vector<Term> kids;
    for (auto& t : ts) {
        if (t.is_true())
            return truth();
        if (t.is_false())
            continue;
        if (t.kind() == Kind::Or)
            kids.insert(kids.end(), t.kids().begin(), t.kids().end());
        else
            kids.push_back(std::move(t));
    }
    if (kids.empty())
        return falsity();
    if (kids.size() == 1)
        return kids.front();
    return Term(std::make_shared<const Node>(Node{Kind::Or, {}, Cmp::Ge, {}, std::move(kids), {}}));
}

Term Term::exists(std::vector<std::string> vars, Term body)
{
    if (vars.empty() || body.is_true() || body.is_false())
        return body;
    return Term(std::make_shared<const Node>(Node{Kind::Exists, {}, Cmp::Ge, {}, {std::move(body)}, std::move(vars)}));
}

Term Term::forall(std::vector<std::string> vars, Term body)
{
    if (vars.empty() || body.is_true() || body.is_false())
        return body;
    return Term(std::make_shared<const Node>(Node{Kind::Forall, {}, Cmp::Ge, {}, {std::move(body)}, std::move(vars)}));
}

bool operator==(const Term& a, const Term& b)
{
    if (a._node == b._node)
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    return x.kind == y.kind && x.lhs == y.lhs && x.cmp == y.cmp && x.rhs == y.rhs && x.kids == y.kids &&
           x.bound == y.bound;
}

bool has_quantifier(const Term& t)
{
    if (t.kind() == Kind::Exists || t.kind() == Kind::Forall)
        return true;
    return std::any_of(t.kids().begin(), t.kids().end(), [](const Term& k) { return has_quantifier(k); });
}

static void collect_free(const Term& t, std::vector<std::string>& scope, std::vector<std::string>& out,
                         std::unordered_set<std::string>& seen)
{
    const auto& n = t.node();
    switch (n.kind) {
    case Kind::Compare:
        for (const auto* e : {&n.lhs, &n.rhs}) {
            for (const auto& [c, v] : e->terms()) {
                if (std::find(scope.begin(), scope.end(), v) != scope.end())
                    continue;
                if (seen.insert(v).second)
                    out.push_back(v);
            }
        }
        return;
    case Kind::Exists:
    case Kind::Forall: {
        auto mark = scope.size();
        scope.insert(scope.end(), n.bound.begin(), n.bound.end());
        collect_free(n.kids.front(), scope, out, seen);
        scope.resize(mark);
        return;
    }
    default:
        for (const auto& k : n.kids)
            collect_free(k, scope, out, seen);
    }
}

std::vector<std::string> free_variables(const Term& t)
{
    std::vector<std::string> scope, out;
    std::unordered_set<std::string> seen;
    collect_free(t, scope, out, seen);
    return out;
}

std::vector<std::string> bound_variables(const Term& t)
{
    std::vector<std::string> out;
    auto walk = [&](auto&& self, const Term& x) -> void {
        const auto& n = x.node();
        out.insert(out.end(), n.bound.begin(), n.bound.end());
        for (const auto& k : n.kids)
            self(self, k);
    };
    walk(walk, t);
    return out;
}

std::size_t atom_count(const Term& t)
{
    if (t.kind() == Kind::Compare)
        return 1;
    std::size_t n = 0;
    for (const auto& k : t.kids())
        n += atom_count(k);
    return n;
}

std::size_t conjunct_count(const Term& t)
{
    if (t.kind() == Kind::And)
        return t.kids().size();
    return 1;
}

static Term hoist(const Term& t, std::vector<std::string>& vars, std::unordered_set<std::string>& taken)
{
    if (t.kind() == Kind::Exists) {
        const auto& bound = t.node().bound;
        bool clash = std::any_of(bound.begin(), bound.end(), [&](const auto& v) { return taken.count(v) > 0; });
        if (!clash) {
            for (const auto& v : bound) {
                vars.push_back(v);
                taken.insert(v);
            }
            return hoist(t.kids().front(), vars, taken);
        }
        return t;
    }
    if (t.kind() == Kind::And) {
        std::vector<Term> kids;
        kids.reserve(t.kids().size());
        for (const auto& k : t.kids())
            kids.push_back(hoist(k, vars, taken));
        return Term::conjunction(std::move(kids));
    }
    return t;
}

Hoisted hoist_existentials(const Term& t)
{
    std::vector<std::string> vars;
    auto free = free_variables(t);
    std::unordered_set<std::string> taken(free.begin(), free.end());
    Term body = hoist(t, vars, taken);
    return Hoisted{std::move(vars), std::move(body)};
}

// ---------------------------------------------------------------------------
// Evaluation

std::int64_t evaluate(const LinExpr& e, const Model& m)
{
    std::int64_t sum = e.constant_part();
    for (const auto& [c, v] : e.terms()) {
        auto it = m.find(v);
        if (it == m.end())
            throw Error(ErrorKind::MissingBinding, "no value for '" + v + "'");
        sum += c * it->second;
    }
    return sum;
}

bool evaluate(const Term& t, const Model& m)
{
    const auto& n = t.node();
    switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Compare: return bppcheck::compare(evaluate(n.lhs, m), n.cmp, evaluate(n.rhs, m));
    case Kind::Not: return !evaluate(n.kids.front(), m);
    case Kind::And:
        return std::all_of(n.kids.begin(), n.kids.end(), [&](const Term& k) { return evaluate(k, m); });
    case Kind::Or:
        return std::any_of(n.kids.begin(), n.kids.end(), [&](const Term& k) { return evaluate(k, m); });
    case Kind::Exists:
    case Kind::Forall: throw Error(ErrorKind::IllFormed, "cannot evaluate a quantified term");
    }
    return false;
}

// ---------------------------------------------------------------------------
// Serialization

static std::string numeral(std::int64_t v)
{
    if (v < 0)
        return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
}

std::string to_smtlib(const LinExpr& e)
{
    std::vector<std::string> parts;
    for (const auto& [c, v] : e.terms()) {
        if (c == 1)
            parts.push_back(v);
        else if (c == -1)
            parts.push_back("(- " + v + ")");
        else
            parts.push_back("(* " + numeral(c) + " " + v + ")");
    }
    if (e.constant_part() != 0 || parts.empty())
        parts.push_back(numeral(e.constant_part()));
    if (parts.size() == 1)
        return parts.front();
    std::string s = "(+";
    for (const auto& p : parts)
        s += " " + p;
    return s + ")";
}

static void emit(const Term& t, std::string& out)
{
    const auto& n = t.node();
    switch (n.kind) {
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Compare: {
        auto l = to_smtlib(n.lhs), r = to_smtlib(n.rhs);
        switch (n.cmp) {
        case Cmp::Eq: out += "(= " + l + " " + r + ")"; return;
        case Cmp::Ne: out += "(not (= " + l + " " + r + "))"; return;
        default: out += std::string("(") + bppcheck::to_string(n.cmp) + " " + l + " " + r + ")"; return;
        }
    }
    case Kind::Not:
        out += "(not ";
        emit(n.kids.front(), out);
        out += ")";
        return;
    case Kind::And:
    case Kind::Or:
        out += n.kind == Kind::And ? "(and" : "(or";
        for (const auto& k : n.kids) {
            out += " ";
            emit(k, out);
        }
        out += ")";
        return;
    case Kind::Exists:
    case Kind::Forall:
        out += n.kind == Kind::Exists ? "(exists (" : "(forall (";
        for (std::size_t i = 0; i < n.bound.size(); ++i)
            out += (i ? " (" : "(") + n.bound[i] + " Int)";
        out += ") ";
        emit(n.kids.front(), out);
        out += ")";
        return;
    }
}

std::string to_smtlib(const Term& t)
{
    std::string out;
    emit(t, out);
    return out;
}

const char* to_string(Logic l) { return l == Logic::QF_LIA ? "QF_LIA" : "LIA"; }

bool is_valid_name(std::string_view name)
{
    if (name.empty())
        return false;
    auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!head(name.front()))
        return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return head(c) || (c >= '0' && c <= '9'); });
}

SmtScript to_smtlib(const Term& assertion, std::vector<std::string> declarations, bool produce_models)
{
    std::unordered_set<std::string> declared;
    for (const auto& d : declarations) {
        if (!is_valid_name(d))
            throw Error(ErrorKind::IllFormed, "invalid SMT name '" + d + "'");
        if (!declared.insert(d).second)
            throw Error(ErrorKind::IllFormed, "'" + d + "' declared twice");
    }
    for (const auto& v : free_variables(assertion)) {
        if (!declared.count(v))
            throw Error(ErrorKind::IllFormed, "free variable '" + v + "' is not declared");
    }
    for (const auto& v : bound_variables(assertion)) {
        if (!is_valid_name(v))
            throw Error(ErrorKind::IllFormed, "invalid SMT name '" + v + "'");
    }

    Logic logic = has_quantifier(assertion) ? Logic::LIA : Logic::QF_LIA;
    std::string text;
    if (produce_models)
        text += "(set-option :produce-models true)\n";
    text += std::string("(set-logic ") + to_string(logic) + ")\n";
    for (const auto& d : declarations)
        text += "(declare-const " + d + " Int)\n";
    if (assertion.kind() == Kind::And) {
        text += "(assert (and";
        for (const auto& k : assertion.kids()) {
            text += "\n  ";
            emit(k, text);
        }
        text += "))\n";
    } else {
        text += "(assert " + to_smtlib(assertion) + ")\n";
    }
    text += "(check-sat)\n";
    if (produce_models)
        text += "(get-model)\n";
    return SmtScript{logic, std::move(declarations), assertion, produce_models, std::move(text)};
}

const char* to_string(Status s)
{
    switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
    }
    return "?";
}

} // namespace bppcheck::smt
