#pragma once

#include "bppcheck/ctl.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bppcheck::smt {

// sum(coeff * var) + constant over integer variables.
class LinExpr
{
    std::vector<std::pair<std::int64_t, std::string>> _terms;
    std::int64_t _constant = 0;

public:
    LinExpr() = default;
    [[nodiscard]] static LinExpr var(std::string name);
    [[nodiscard]] static LinExpr constant(std::int64_t c);

    LinExpr& add(std::int64_t coeff, std::string name);
    LinExpr& add(std::int64_t c);
    LinExpr& add(std::int64_t factor, const LinExpr& other);

    [[nodiscard]] const std::vector<std::pair<std::int64_t, std::string>>& terms() const { return _terms; }
    [[nodiscard]] std::int64_t constant_part() const { return _constant; }
    [[nodiscard]] bool is_constant() const { return _terms.empty(); }

    friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

[[nodiscard]] LinExpr operator+(LinExpr a, const LinExpr& b);
[[nodiscard]] LinExpr operator-(LinExpr a, const LinExpr& b);

enum class Kind { True, False, Compare, Not, And, Or, Exists, Forall };

// Immutable boolean term over linear integer constraints.
class Term
{
public:
    struct Node
    {
        Kind kind;
        LinExpr lhs;
        Cmp cmp = Cmp::Ge;
        LinExpr rhs;
        std::vector<Term> kids;
        std::vector<std::string> bound;
    };

    [[nodiscard]] static Term truth();
    [[nodiscard]] static Term falsity();
    // Folds to a constant when both sides are constant.
    [[nodiscard]] static Term compare(LinExpr lhs, Cmp cmp, LinExpr rhs);
    [[nodiscard]] static Term negation(Term t);
    // Flattens nested conjunctions, drops true, collapses on false. Empty = true.
    [[nodiscard]] static Term conjunction(std::vector<Term> ts);
    // Dual of conjunction. Empty = false.
    [[nodiscard]] static Term disjunction(std::vector<Term> ts);
    [[nodiscard]] static Term exists(std::vector<std::string> vars, Term body);
    [[nodiscard]] static Term forall(std::vector<std::string> vars, Term body);

    [[nodiscard]] Kind kind() const { return _node->kind; }
    [[nodiscard]] const Node& node() const { return *_node; }
    [[nodiscard]] const std::vector<Term>& kids() const { return _node->kids; }

    [[nodiscard]] bool is_true() const { return kind() == Kind::True; }
    [[nodiscard]] bool is_false() const { return kind() == Kind::False; }

    friend bool operator==(const Term& a, const Term& b);

private:
    std::shared_ptr<const Node> _node;
    explicit Term(std::shared_ptr<const Node> n) : _node(std::move(n)) {}
};

[[nodiscard]] bool has_quantifier(const Term& t);

// Free variables in first-occurrence order.
[[nodiscard]] std::vector<std::string> free_variables(const Term& t);

// Bound variables of every quantifier block, in traversal order.
[[nodiscard]] std::vector<std::string> bound_variables(const Term& t);

// Number of comparison leaves.
[[nodiscard]] std::size_t atom_count(const Term& t);

// Top-level conjunct count (1 for a non-conjunction).
[[nodiscard]] std::size_t conjunct_count(const Term& t);

struct Hoisted
{
    std::vector<std::string> vars;
    Term body;
};

// Lifts existential blocks reachable from the root through conjunctions only into free
// variables. Satisfiability is unchanged; hoisted variables become part of solver models.
[[nodiscard]] Hoisted hoist_existentials(const Term& t);

using Model = std::map<std::string, std::int64_t>;

[[nodiscard]] std::int64_t evaluate(const LinExpr& e, const Model& m);
// Quantifier-free terms only. Throws IllFormed on quantifiers, MissingBinding on free names.
[[nodiscard]] bool evaluate(const Term& t, const Model& m);

[[nodiscard]] std::string to_smtlib(const LinExpr& e);
[[nodiscard]] std::string to_smtlib(const Term& t);

enum class Logic { QF_LIA, LIA };

[[nodiscard]] const char* to_string(Logic l);

struct SmtScript
{
    Logic logic = Logic::QF_LIA;
    std::vector<std::string> declarations;
    Term assertion = Term::truth();
    bool produce_models = true;
    std::string text; // exact bytes sent to a solver
};

[[nodiscard]] bool is_valid_name(std::string_view name);

// Deterministic serialization. Every free variable of the assertion must appear in
// declarations exactly once (in the given order); throws IllFormed otherwise.
[[nodiscard]] SmtScript to_smtlib(const Term& assertion, std::vector<std::string> declarations,
                                  bool produce_models = true);

// ---------------------------------------------------------------------------
// External solver process

struct SolverConfig
{
    std::string executable = "z3";
    std::vector<std::string> args = {"-in", "-smt2"};
    std::chrono::milliseconds timeout{60000};
};

// Default arguments for a solver executable (z3, cvc5, yices-smt2); z3's otherwise.
[[nodiscard]] std::vector<std::string> default_solver_args(const std::string& executable);

// Solver from an explicit path, else $BPPCHECK_SOLVER, else z3.
[[nodiscard]] SolverConfig solver_config_from(const std::optional<std::string>& path,
                                              std::chrono::milliseconds timeout);

enum class Status { Sat, Unsat, Unknown };

[[nodiscard]] const char* to_string(Status s);

struct SolverOutcome
{
    Status status = Status::Unknown;
    std::optional<Model> model;
    double wall_ms = 0;
    bool timed_out = false;
    std::string raw;
};

// Runs one solver process on the script. Throws SolverNotFound, SolverCrashed, ProtocolError.
[[nodiscard]] SolverOutcome run_solver(const SmtScript& script, const SolverConfig& config);

// Integer bindings for the expected names from (define-fun name () Int value) forms.
// Throws MissingBinding, NonIntegerBinding.
[[nodiscard]] Model parse_model(const std::string& raw, const std::vector<std::string>& expected);

} // namespace bppcheck::smt
