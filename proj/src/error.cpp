#include "bppcheck/error.hpp"

namespace bppcheck {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RuleNotEnabled: return "RuleNotEnabled";
    case ErrorKind::CountOverflow: return "CountOverflow";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Duplicate: return "DuplicateDeclaration";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::MixedFormula: return "MixedFormula";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::SolverNotFound: return "SolverNotFound";
    case ErrorKind::SolverCrashed: return "SolverCrashed";
    case ErrorKind::ProtocolError: return "ProtocolError";
    case ErrorKind::MissingBinding: return "MissingBinding";
    case ErrorKind::NonIntegerBinding: return "NonIntegerBinding";
    }
    return "Error";
}

static std::string describe(std::size_t line, std::size_t column, const std::string& expected,
                            const std::string& found)
{
    return std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
           ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'");
}

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : Error(ErrorKind::Parse, describe(line, column, expected, found)), _line(line), _column(column),
      _expected(std::move(expected)), _found(std::move(found))
{
}

} // namespace bppcheck
