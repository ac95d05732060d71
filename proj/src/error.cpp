// error.cpp: error kinds and messages

#include "qgeom/error.hpp"

namespace qgeom {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::SymArityError: return "SymArityError";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::SymArityError:
    case ErrorKind::UnsupportedDescriptor:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionTooSmall:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorKind::SyntaxError,
            message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line), column_(column)
{
}

} // namespace qgeom
