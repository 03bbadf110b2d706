#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace pqs {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad configuration, invalid parameters).
class InputError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public InputError {
public:
    using InputError::InputError;
};

class DegenerateQuotient : public Error {
public:
    using Error::Error;
};

class OutsideDisc : public Error {
public:
    using Error::Error;
};

class VanishingDerivative : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    ZeroDenominator(const std::string& what, std::complex<double> witness)
        : Error(what), witness_(witness) {}

    std::complex<double> witness() const noexcept { return witness_; }

private:
    std::complex<double> witness_;
};

class UnknownPreset : public InputError {
public:
    using InputError::InputError;
};

class InvalidWeights : public InputError {
public:
    using InputError::InputError;
};

class NotMember : public Error {
public:
    using Error::Error;
};

class NonpositiveDenominator : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class PreconditionUnmet : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

/// Invariant breach in a configuration; `field()` is a JSON-pointer-like path.
class ValidationError : public InputError {
public:
    ValidationError(std::string field, const std::string& what)
        : InputError(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pqs
