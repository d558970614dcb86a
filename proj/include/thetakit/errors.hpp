#ifndef THETAKIT_ERRORS_HPP
#define THETAKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thetakit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; `position` is the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An exact answer would need objects outside the tabulated window.
class WindowExhausted : public Error {
public:
    WindowExhausted(const std::string& what, std::string offending)
        : Error(what + ": " + offending), offending_(std::move(offending)) {}

    const std::string& offending() const noexcept { return offending_; }

private:
    std::string offending_;
};

/// A precondition on arguments (ranks, levels, shapes) does not hold.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Two routes that must agree did not, or a structural invariant failed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace thetakit

#endif // THETAKIT_ERRORS_HPP
