#ifndef QCOEFF_SERIES_HPP
#define QCOEFF_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcoeff/arith.hpp"

namespace qcoeff {

/// A formal power series truncated at q^order. The order is fixed at
/// construction; combining series of different orders is an error, never a
/// silent re-truncation.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order)
        : order_(order), coeff_(order + 1) {}

    TruncatedSeries(std::size_t order, std::vector<Rat> coefficients);

    /// The series 1 + 0q + ... + 0q^order.
    static TruncatedSeries one(std::size_t order);

    std::size_t order() const { return order_; }
    const Rat& operator[](std::size_t n) const { return coeff_[n]; }
    Rat& at(std::size_t n) { return coeff_.at(n); }
    const std::vector<Rat>& coefficients() const { return coeff_; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::size_t order_;
    std::vector<Rat> coeff_;
};

/// Cauchy product truncated to the common order. Throws OrderMismatch when
/// the orders differ.
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b);

/// Sum of p(n) q^n to order N via the part-by-part dynamic program
/// (for each part k, for n from k to N: c[n] += c[n-k]).
TruncatedSeries partition_series_oracle(std::size_t N);

/// Product of (1 - q^k)^t over k = 1..N, truncated to order N, by repeated
/// truncated multiplication of the factors. Negative t expands each
/// 1/(1 - q^k) as a truncated geometric series; all coefficients stay
/// integral. op_count, when given, accumulates the number of coefficient
/// multiply-adds performed.
TruncatedSeries product_power_oracle(long t, std::size_t N, std::uint64_t* op_count = nullptr);

} // namespace qcoeff

#endif
