#include "qcoeff/series.hpp"

#include <cstdlib>
#include <utility>

namespace qcoeff {

TruncatedSeries::TruncatedSeries(std::size_t order, std::vector<Rat> coefficients)
    : order_(order), coeff_(std::move(coefficients)) {
    if (coeff_.size() != order_ + 1) {
        throw DomainError("coefficient array length must equal order + 1");
    }
}

TruncatedSeries TruncatedSeries::one(std::size_t order) {
    TruncatedSeries s(order);
    s.at(0) = 1;
    return s;
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) {
        throw OrderMismatch("cannot multiply series of orders " + std::to_string(a.order()) +
                            " and " + std::to_string(b.order()));
    }
    const std::size_t N = a.order();
    TruncatedSeries out(N);
    Rat term;
    // schoolbook convolution, walked by the nonzero terms of b
    for (std::size_t m = 0; m <= N; ++m) {
        if (b[m] == 0) continue;
        for (std::size_t n = m; n <= N; ++n) {
            term = a[n - m];
            term *= b[m];
            out.at(n) += term;
        }
    }
    return out;
}

TruncatedSeries partition_series_oracle(std::size_t N) {
    std::vector<Int> count(N + 1);
    count[0] = 1;
    for (std::size_t part = 1; part <= N; ++part) {
        for (std::size_t n = part; n <= N; ++n) {
            count[n] += count[n - part];
        }
    }
    std::vector<Rat> coeff(N + 1);
    for (std::size_t n = 0; n <= N; ++n) coeff[n] = Rat(count[n]);
    return TruncatedSeries(N, std::move(coeff));
}

namespace {

// (1 - q^k) truncated to order N.
TruncatedSeries binomial_factor(std::size_t k, std::size_t N) {
    TruncatedSeries f = TruncatedSeries::one(N);
    if (k <= N) f.at(k) = -1;
    return f;
}

// 1/(1 - q^k) = 1 + q^k + q^{2k} + ... truncated to order N.
TruncatedSeries geometric_factor(std::size_t k, std::size_t N) {
    TruncatedSeries f(N);
    for (std::size_t n = 0; n <= N; n += k) f.at(n) = 1;
    return f;
}

// Multiply-adds performed by multiply(acc, f) for an order-N accumulator.
std::uint64_t multiply_ops(const TruncatedSeries& f) {
    std::uint64_t ops = 0;
    for (std::size_t m = 0; m <= f.order(); ++m) {
        if (f[m] != 0) ops += f.order() - m + 1;
    }
    return ops;
}

} // namespace

TruncatedSeries product_power_oracle(long t, std::size_t N, std::uint64_t* op_count) {
    TruncatedSeries acc = TruncatedSeries::one(N);
    const long reps = std::labs(t);
    for (std::size_t k = 1; k <= N; ++k) {
        const TruncatedSeries factor = t >= 0 ? binomial_factor(k, N) : geometric_factor(k, N);
        for (long i = 0; i < reps; ++i) {
            if (op_count != nullptr) *op_count += multiply_ops(factor);
            acc = multiply(acc, factor);
        }
    }
    return acc;
}

} // namespace qcoeff
