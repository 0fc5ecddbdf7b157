#pragma once

#include "bppcheck/acs.hpp"
#include "bppcheck/bpp.hpp"
#include "bppcheck/ctl.hpp"

#include <set>
#include <string>
#include <string_view>

namespace bppcheck {

struct ProblemFile
{
    Bpp bpp;
    Marking initial;
    Formula formula;
    std::string path;
    std::string text;
};

// Structural equality; source path and text are ignored.
[[nodiscard]] bool same_problem(const ProblemFile& a, const ProblemFile& b);

// Grammar productions of the problem language, for corpus coverage accounting.
enum class Production {
    Problem,
    Bpp,
    SymbolsSingle,
    SymbolsList,
    RulesSingle,
    RulesMany,
    RuleUnlabeled,
    RuleLabeled,
    FormulaUnary,
    FormulaBinary,
    FormulaNext,
    FormulaQuery,
    Query,
    AccMult,
    AccConnect,
    MultVar,
    MultScaled,
    ConnectPlus,
    ConnectMinus,
    CompareEq,
    CompareNe,
    CompareGe,
    CompareLe,
    CompareGt,
    CompareLt,
    UnaryNeg,
    UnaryEG,
    UnaryAF,
    UnaryEF,
    BinaryConj,
    BinaryDisj,
    BinaryImp,
    NextEX,
    NextAX,
    Var,
    Label,
    Number,
};

[[nodiscard]] const std::vector<Production>& all_productions();
[[nodiscard]] const char* to_string(Production p);

struct ParseOptions
{
    bool allow_mail = false;              // accept mail(p,m) terms in queries
    std::set<Production>* coverage = nullptr;
};

// Throws ParseError on syntax errors, UnknownSymbol / UnknownLabel from the resolution pass.
[[nodiscard]] ProblemFile parse_problem(std::string_view text, const ParseOptions& options = {});

// A standalone formula, optionally preceded by the keyword `formula`. Symbols are not resolved.
[[nodiscard]] Formula parse_formula(std::string_view text, const ParseOptions& options = {});

struct AcsFile
{
    Acs acs;
    AcsPlace initial;
};

// Throws ParseError, Error(Duplicate / UnknownState / UnknownReference).
[[nodiscard]] AcsFile parse_acs(std::string_view text);

// Problem-language rendering; parse_problem(to_text(p)) is structurally equal to p.
[[nodiscard]] std::string to_text(const ProblemFile& p);

// Problem-language rendering of a BPP with an initial marking and formula.
[[nodiscard]] std::string to_problem_text(const Bpp& bpp, const Marking& initial, const Formula& f);

[[nodiscard]] std::string read_file(const std::string& path);

} // namespace bppcheck
