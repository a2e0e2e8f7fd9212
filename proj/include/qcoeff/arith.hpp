#ifndef QCOEFF_ARITH_HPP
#define QCOEFF_ARITH_HPP

#include <gmpxx.h>

#include <string>

#include "qcoeff/errors.hpp"

namespace qcoeff {

// Exact arithmetic is GMP-backed. mpq_class keeps every value in canonical
// form (reduced, positive denominator), so structural equality is value
// equality.
using Int = mpz_class;
using Rat = mpq_class;

/// Builds num/den in canonical form. Throws DomainError when den = 0.
Rat make_rational(const Int& num, const Int& den);

/// Parses "a/b" or a plain integer literal (optional sign, no decimals).
Rat parse_rational(const std::string& text);

/// Canonical text form: "a/b" reduced with b > 0, integers without "/1".
std::string to_string(const Rat& q);

/// True when q has denominator 1.
bool is_integral(const Rat& q);

/// A value reduced into [0, m) together with its modulus m >= 2.
struct Residue {
    long value;
    long modulus;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Multiplicative inverse of a modulo m via the extended Euclidean
/// algorithm. Throws DenominatorNotInvertible when gcd(a, m) != 1.
long mod_inverse(long a, long m);

/// Reduces a/b to (a * b^-1) mod m. For integral q this is plain q mod m.
/// Throws DenominatorNotInvertible when gcd(b, m) != 1.
Residue reduce_mod(const Rat& q, long m);

/// Sum of the positive divisors of n (n >= 1, trial division).
long long sigma(long long n);

/// k(k+1)/2 for k >= 0.
long long triangular(long long k);

/// Exact floor square root of n >= 0.
long long isqrt(long long n);

/// Number of j >= 1 with j(j+1)/2 <= n, i.e. floor((sqrt(8n+1)-1)/2).
long long triangular_index(long long n);

} // namespace qcoeff

#endif
