#ifndef AEQ_ERRORS_HPP_
#define AEQ_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aeq {

// Root of every error thrown by the library. The CLI maps InputError and
// PreconditionError to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or degenerate user input (zero polynomial, bad group fixture).
class InputError : public Error {
public:
    using Error::Error;
};

// Text that failed to parse; `position` is a 0-based column into the input.
class ParseError : public InputError {
public:
    ParseError(std::string const& message, std::size_t position)
        : InputError(message + " at column " + std::to_string(position + 1)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A mathematical hypothesis of an operation does not hold for its inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ModulusMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// Reduction of a monic integer polynomial lost degree (modulus divides the
// leading coefficient).
class DegreeDropError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ClosureBoundExceeded : public Error {
public:
    using Error::Error;
};

// A randomized search hit its retry bound.
class RetryExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace aeq

#endif  // AEQ_ERRORS_HPP_
