// error.hpp: error kinds raised across the library and the CLI exit-code mapping

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgeom {

enum class ErrorKind {
    NotHermitian,
    NoConvergence,
    ShapeMismatch,
    DimensionTooSmall,
    UnsupportedDescriptor,
    SyntaxError,
    UnknownSymbol,
    SymArityError,
    DomainViolation,
    DegenerateSpectrum,
    AmbiguousMatch,
    DegeneratePair,
    SingularMetric,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// True for errors caused by malformed user input (CLI exit code 2); everything
// else is a numerical or domain failure (exit code 3).
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parser failure with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace qgeom
