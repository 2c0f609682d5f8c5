#pragma once

#include <stdexcept>
#include <string>

namespace spacetime {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression or manifold text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    int line_;
    int column_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation hit a zero denominator.
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

class MetricError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Structure data violates a precondition (zero beta, zero one-form, ...).
class StructureError : public Error {
public:
    using Error::Error;
};

// A command asks for something the input does not provide (unknown check, missing block).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace spacetime
