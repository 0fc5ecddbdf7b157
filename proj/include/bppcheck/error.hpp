#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bppcheck {

enum class ErrorKind {
    UnknownSymbol,
    UnknownLabel,
    DimensionMismatch,
    RuleNotEnabled,
    CountOverflow,
    Parse,
    Duplicate,
    UnknownState,
    UnknownReference,
    MixedFormula,
    IllFormed,
    SolverNotFound,
    SolverCrashed,
    ProtocolError,
    MissingBinding,
    NonIntegerBinding,
};

[[nodiscard]] const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
    ErrorKind _kind;

public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), _kind(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const { return _kind; }
};

// Positions are 1-based and point at the first offending token.
class ParseError : public Error
{
    std::size_t _line;
    std::size_t _column;
    std::string _expected;
    std::string _found;

public:
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found);

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
    [[nodiscard]] const std::string& expected() const { return _expected; }
    [[nodiscard]] const std::string& found() const { return _found; }
};

} // namespace bppcheck
