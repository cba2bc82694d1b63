#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perhamm {

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unknown builtin name.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed expression text. `position` is the 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the domain of an operation (sqrt of a negative, division by ~0, overflow).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The linear operator has (numerically) zero spectral radius.
class DegenerateKernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem file could not be read or does not match the schema.
class ProblemFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace perhamm
