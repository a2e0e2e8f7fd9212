#ifndef QCOEFF_ERRORS_HPP
#define QCOEFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcoeff {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (n < 1, zero denominator, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A rational residue was requested but the denominator shares a factor
/// with the modulus.
class DenominatorNotInvertible : public Error {
public:
    using Error::Error;
};

/// Two series of different truncation orders were combined.
class OrderMismatch : public Error {
public:
    using Error::Error;
};

/// A coefficient table does not extend far enough for the requested range.
class OrderTooSmall : public Error {
public:
    using Error::Error;
};

/// An exponent that must be nonzero was zero.
class ZeroExponent : public Error {
public:
    using Error::Error;
};

/// An engine produced a non-integer where the mathematics forces an integer.
class IntegralityViolation : public Error {
public:
    using Error::Error;
};

/// The exponent's residue class does not match the congruence family.
class ResidueMismatch : public Error {
public:
    using Error::Error;
};

/// Two engines that must agree produced different coefficients.
class AgreementFailure : public Error {
public:
    using Error::Error;
};

/// Malformed input text (rational literals, CLI values).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace qcoeff

#endif
