#pragma once

#include "bppcheck/bpp.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace bppcheck {

enum class Cmp { Ge, Le, Gt, Lt, Eq, Ne };

[[nodiscard]] const char* to_string(Cmp cmp);
[[nodiscard]] bool compare(std::int64_t lhs, Cmp cmp, std::int64_t rhs);
[[nodiscard]] Cmp negate(Cmp cmp);

// mail(p,m): mailbox content of an ACS, only meaningful before lifting to a converted BPP.
struct MailboxRef
{
    std::string proc;
    std::string msg;
    friend bool operator==(const MailboxRef&, const MailboxRef&) = default;
};

struct AtomTerm
{
    std::variant<std::string, MailboxRef> ref;
    std::int64_t coeff = 1;
    friend bool operator==(const AtomTerm&, const AtomTerm&) = default;
};

// sum(coeff * count) cmp bound. Repeated symbols add up.
struct LinearAtom
{
    std::vector<AtomTerm> terms;
    Cmp cmp = Cmp::Ge;
    std::int64_t bound = 0;

    friend bool operator==(const LinearAtom&, const LinearAtom&) = default;
};

enum class Op { Atom, Not, And, Or, Imp, ENext, ANext, EG, AF, EF };

[[nodiscard]] const char* to_string(Op op);

// Immutable CTL formula tree with value semantics; copies share structure.
class Formula
{
public:
    struct Node;

    [[nodiscard]] static Formula atom(LinearAtom a);
    [[nodiscard]] static Formula negation(Formula f);
    [[nodiscard]] static Formula conjunction(Formula a, Formula b);
    [[nodiscard]] static Formula disjunction(Formula a, Formula b);
    [[nodiscard]] static Formula implication(Formula a, Formula b);
    [[nodiscard]] static Formula exists_next(std::string action, Formula f);
    [[nodiscard]] static Formula forall_next(std::string action, Formula f);
    [[nodiscard]] static Formula exists_globally(Formula f);
    [[nodiscard]] static Formula forall_finally(Formula f);
    [[nodiscard]] static Formula exists_finally(Formula f);

    [[nodiscard]] Op op() const;
    [[nodiscard]] const LinearAtom& atom() const;   // Op::Atom only
    [[nodiscard]] const std::string& action() const; // ENext/ANext only
    [[nodiscard]] std::size_t arity() const;
    [[nodiscard]] const Formula& child(std::size_t i) const;

    // Stable address of the shared node; usable as a memo key while the formula lives.
    [[nodiscard]] const void* identity() const { return _node.get(); }

    [[nodiscard]] std::size_t depth() const;
    [[nodiscard]] bool contains(Op op) const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    std::shared_ptr<const Node> _node;
    explicit Formula(std::shared_ptr<const Node> node) : _node(std::move(node)) {}
};

struct Formula::Node
{
    Op op;
    LinearAtom atom;
    std::string action;
    std::vector<Formula> kids;
};

// A formula over Atom/Not/And/ENext/EG/EF only.
class CoreFormula
{
    Formula _f;
    explicit CoreFormula(Formula f) : _f(std::move(f)) {}
    friend CoreFormula desugar(const Formula& f);

public:
    // Throws IllFormed if f uses Or/Imp/AF/ANext.
    [[nodiscard]] static CoreFormula from(Formula f);
    [[nodiscard]] const Formula& formula() const { return _f; }
    friend bool operator==(const CoreFormula&, const CoreFormula&) = default;
};

[[nodiscard]] bool is_core(const Formula& f);

// Or/Imp/AF/ANext rewritten through negation and conjunction; otherwise structure-preserving.
[[nodiscard]] CoreFormula desugar(const Formula& f);

enum class FormulaClass { Ef, Eg, Mixed };

[[nodiscard]] const char* to_string(FormulaClass c);

// Ef: boolean combination of atoms and EF(psi) with psi a boolean combination of atoms.
// Eg: no EF anywhere (and not Ef). Mixed: anything else.
[[nodiscard]] FormulaClass classify(const CoreFormula& f);

// Human-readable reason a formula is Mixed; empty when it is not.
[[nodiscard]] std::string mixed_reason(const CoreFormula& f);

// True for formulas built only from atoms, Not, And, Or, Imp.
[[nodiscard]] bool is_propositional(const Formula& f);

// Left-hand side value of the atom at m. Throws UnknownSymbol (also for unlifted mail terms).
[[nodiscard]] std::int64_t atom_value(const LinearAtom& a, const Marking& m, const Bpp& bpp);
[[nodiscard]] bool eval_atomic(const LinearAtom& a, const Marking& m, const Bpp& bpp);

// Boolean evaluation of a propositional formula (atoms and connectives) at m.
[[nodiscard]] bool eval_propositional(const Formula& f, const Marking& m, const Bpp& bpp);

// Checks symbols and action labels against the BPP. Throws UnknownSymbol / UnknownLabel.
void resolve(const Formula& f, const Bpp& bpp);

// Concrete syntax accepted by the problem-file parser.
[[nodiscard]] std::string to_text(const LinearAtom& a);
[[nodiscard]] std::string to_text(const Formula& f);

} // namespace bppcheck
