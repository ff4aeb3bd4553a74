#ifndef POISSONLAB_ERRORS_HPP
#define POISSONLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace poissonlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two values built over different variable contexts were combined.
struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& msg) : Error(msg) {}
};

/// Chart-variable or derivation index outside 1..n.
struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

/// A specialization map does not cover a parameter that occurs in the value.
struct MissingParameter : Error {
    explicit MissingParameter(const std::string& msg) : Error(msg) {}
};

/// A Groebner-basis computation was requested while symbolic parameters
/// remain in the generators.
struct UnspecializedParameter : Error {
    explicit UnspecializedParameter(const std::string& msg) : Error(msg) {}
};

/// Vector lengths disagree (free-module operations).
struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

/// Operation received a value of the wrong multivector/form degree.
struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

/// Operation requires homogeneous polynomial coefficients.
struct NonHomogeneous : Error {
    explicit NonHomogeneous(const std::string& msg) : Error(msg) {}
};

/// Operation is undefined on the zero input.
struct ZeroInput : Error {
    explicit ZeroInput(const std::string& msg) : Error(msg) {}
};

/// Syntax error with position and the tokens that would have been accepted.
struct ParseError : Error {
    int line;
    int column;
    std::vector<std::string> expected;
    ParseError(int line_, int column_, std::vector<std::string> expected_,
               const std::string& msg)
        : Error(msg), line(line_), column(column_), expected(std::move(expected_)) {}
};

/// Well-formed input that violates a semantic rule (undeclared symbol,
/// repeated derivation index, duplicate declaration, ...).
struct SemanticError : Error {
    int line;
    int column;
    SemanticError(int line_, int column_, const std::string& msg)
        : Error(msg), line(line_), column(column_) {}
};

}  // namespace poissonlab

#endif
