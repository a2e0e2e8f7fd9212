#ifndef QCOEFF_EXPAND_HPP
#define QCOEFF_EXPAND_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qcoeff/arith.hpp"
#include "qcoeff/report.hpp"
#include "qcoeff/series.hpp"

namespace qcoeff {

/// Which algorithm produced a coefficient table.
enum class Engine {
    SparseRecurrence, // triangular-number recurrence, O(n^1/2) terms per coefficient
    LemmaRecurrence,  // general two-exponent convolution recurrence, O(n) terms
    DirectOracle,     // brute-force product expansion or closed form
};

std::string_view engine_name(Engine engine);

/// Coefficients of the r-th power of the partition generating function:
/// coefficients[n] holds the coefficient of q^n, coefficients[0] = 1.
/// inner_terms counts the recurrence terms the producing engine evaluated.
struct SeriesExpansion {
    Rat exponent;
    std::size_t order = 0;
    std::vector<Rat> coefficients;
    Engine engine = Engine::DirectOracle;
    std::uint64_t inner_terms = 0;

    TruncatedSeries as_series() const { return TruncatedSeries(order, coefficients); }
};

/// Coefficient of q^n in the cube of the Euler product: (-1)^k (2k+1) when
/// n = k(k+1)/2, else 0. Triangularity is detected by an exact integer
/// square-root test on 8n+1.
long long jacobi_coefficient(long long n);

/// The sparse exponent -3 table built from jacobi_coefficient, tagged DirectOracle.
SeriesExpansion jacobi_expansion(std::size_t N);

/// Wraps an independently computed coefficient table as an expansion with
/// exponent r, tagged DirectOracle.
SeriesExpansion oracle_expansion(const Rat& r, const TruncatedSeries& series,
                                 std::uint64_t inner_terms = 0);

/// Expands P^r to order N with the sparse recurrence
///   n c[n] = sum over j >= 1, T_j <= n of
///            (-1)^{j+1} (2j+1) (n + (r/3 - 1) T_j) c[n - T_j],
/// dividing by n exactly in rational arithmetic. For integer r every
/// intermediate sum is checked to be an integer divisible by n.
SeriesExpansion expand_sparse(const Rat& r, std::size_t N);

/// Expands P^r to order N from a known table of P^s via the convolution
/// recurrence n c[n] = sum over k = 1..n of ((r/s + 1) k - n) c[n-k] base[k].
/// Throws ZeroExponent when r = 0 or s = 0, OrderTooSmall when the base
/// table is shorter than N.
SeriesExpansion expand_lemma(const Rat& r, const Rat& s, const SeriesExpansion& base_s,
                             std::size_t N);

/// Ramanujan's tau function: the coefficient of q^{n-1} in the 24th power of
/// the Euler product, n >= 1. Computed with the sparse recurrence at
/// exponent -24 and asserted integral.
Int tau(long long n);

/// tau(1..n_max) from a single exponent -24 expansion.
std::vector<Int> tau_table(long long n_max);

/// Evaluates sum over k = 0..n of (n - (r/s + 1) k) P_r(n-k) P_s(k) exactly
/// for every n in 0..N and reports each n where it is nonzero (expected none).
VerificationReport verify_lemma_identity(const Rat& r, const Rat& s, const SeriesExpansion& exp_r,
                                         const SeriesExpansion& exp_s, std::size_t N);

/// Checks sum over d = 1..n of sigma(d) p(n-d) = n p(n) exactly for every n
/// in 1..N, using the partition oracle.
VerificationReport verify_sigma_identity(std::size_t N);

} // namespace qcoeff

#endif
