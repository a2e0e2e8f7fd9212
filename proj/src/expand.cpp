#include "qcoeff/expand.hpp"

#include <chrono>
#include <utility>

namespace qcoeff {

std::string_view engine_name(Engine engine) {
    switch (engine) {
        case Engine::SparseRecurrence: return "sparse";
        case Engine::LemmaRecurrence: return "lemma";
        case Engine::DirectOracle: return "oracle";
    }
    return "unknown";
}

long long jacobi_coefficient(long long n) {
    if (n < 0) throw DomainError("jacobi_coefficient requires n >= 0");
    const long long root = isqrt(8 * n + 1);
    if (root * root != 8 * n + 1) return 0;
    const long long k = (root - 1) / 2;
    const long long value = 2 * k + 1;
    return k % 2 == 0 ? value : -value;
}

SeriesExpansion jacobi_expansion(std::size_t N) {
    std::vector<Rat> coeff(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        coeff[n] = Rat(static_cast<long>(jacobi_coefficient(static_cast<long long>(n))));
    }
    return SeriesExpansion{Rat(-3), N, std::move(coeff), Engine::DirectOracle, 0};
}

SeriesExpansion oracle_expansion(const Rat& r, const TruncatedSeries& series,
                                 std::uint64_t inner_terms) {
    return SeriesExpansion{r, series.order(), series.coefficients(), Engine::DirectOracle,
                           inner_terms};
}

namespace {

// Divides the accumulated value of n*c[n] by n. For integer exponents the
// sum must already be an integer divisible by n; anything else is an engine
// bug, not a rounding issue, and is reported as such.
void exact_divide(Rat& sum, std::size_t n, bool integral_exponent, const char* engine) {
    if (integral_exponent) {
        if (sum.get_den() != 1 ||
            !mpz_divisible_ui_p(sum.get_num().get_mpz_t(), static_cast<unsigned long>(n))) {
            throw IntegralityViolation(std::string(engine) + " recurrence produced non-integral " +
                                       "coefficient sum at n=" + std::to_string(n) + ": " +
                                       to_string(sum));
        }
    }
    sum /= static_cast<long>(n);
}

} // namespace

SeriesExpansion expand_sparse(const Rat& r, std::size_t N) {
    std::vector<Rat> coeff(N + 1);
    coeff[0] = 1;
    const bool integral_r = is_integral(r);
    const Rat slope = r / 3 - 1; // multiplies T_j inside the recurrence factor
    std::uint64_t terms = 0;

    Rat sum, term;
    for (std::size_t n = 1; n <= N; ++n) {
        sum = 0;
        for (long j = 1;; ++j) {
            const long t = j * (j + 1) / 2;
            if (t > static_cast<long>(n)) break;
            term = slope;
            term *= t;
            term += static_cast<long>(n);
            term *= 2 * j + 1;
            if (j % 2 == 0) term = -term; // sign (-1)^{j+1}
            term *= coeff[n - static_cast<std::size_t>(t)];
            sum += term;
            ++terms;
        }
        exact_divide(sum, n, integral_r, "sparse");
        coeff[n] = sum;
    }
    return SeriesExpansion{r, N, std::move(coeff), Engine::SparseRecurrence, terms};
}

SeriesExpansion expand_lemma(const Rat& r, const Rat& s, const SeriesExpansion& base_s,
                             std::size_t N) {
    if (r == 0 || s == 0) throw ZeroExponent("lemma recurrence requires nonzero exponents");
    if (base_s.exponent != s) {
        throw DomainError("base expansion has exponent " + to_string(base_s.exponent) +
                          ", expected " + to_string(s));
    }
    if (base_s.order < N) {
        throw OrderTooSmall("base expansion covers order " + std::to_string(base_s.order) +
                            ", need " + std::to_string(N));
    }

    std::vector<Rat> coeff(N + 1);
    coeff[0] = 1;
    const bool integral_r = is_integral(r);
    const Rat ratio = r / s + 1;
    std::uint64_t terms = 0;

    Rat sum, term;
    for (std::size_t n = 1; n <= N; ++n) {
        sum = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            ++terms;
            const Rat& base = base_s.coefficients[k];
            if (base == 0) continue;
            term = ratio;
            term *= static_cast<long>(k);
            term -= static_cast<long>(n); // (r/s + 1) k - n
            term *= coeff[n - k];
            term *= base;
            sum += term;
        }
        exact_divide(sum, n, integral_r, "lemma");
        coeff[n] = sum;
    }
    return SeriesExpansion{r, N, std::move(coeff), Engine::LemmaRecurrence, terms};
}

Int tau(long long n) {
    if (n < 1) throw DomainError("tau requires n >= 1");
    const SeriesExpansion exp = expand_sparse(Rat(-24), static_cast<std::size_t>(n - 1));
    const Rat& value = exp.coefficients.back();
    if (!is_integral(value)) {
        throw IntegralityViolation("tau(" + std::to_string(n) + ") evaluated to non-integer " +
                                   to_string(value));
    }
    return value.get_num();
}

std::vector<Int> tau_table(long long n_max) {
    if (n_max < 1) throw DomainError("tau requires n >= 1");
    const SeriesExpansion exp = expand_sparse(Rat(-24), static_cast<std::size_t>(n_max - 1));
    std::vector<Int> values;
    values.reserve(static_cast<std::size_t>(n_max));
    for (long long n = 1; n <= n_max; ++n) {
        const Rat& value = exp.coefficients[static_cast<std::size_t>(n - 1)];
        if (!is_integral(value)) {
            throw IntegralityViolation("tau(" + std::to_string(n) + ") evaluated to non-integer " +
                                       to_string(value));
        }
        values.push_back(value.get_num());
    }
    return values;
}

VerificationReport verify_lemma_identity(const Rat& r, const Rat& s, const SeriesExpansion& exp_r,
                                         const SeriesExpansion& exp_s, std::size_t N) {
    if (s == 0) throw ZeroExponent("lemma identity requires s != 0");
    if (exp_r.exponent != r || exp_s.exponent != s) {
        throw DomainError("expansion exponents do not match the requested identity");
    }
    if (exp_r.order < N || exp_s.order < N) {
        throw OrderTooSmall("lemma identity to order " + std::to_string(N) +
                            " needs both tables that far");
    }

    VerificationReport report;
    report.description = "sum_k (n - (r/s+1)k) P_r(n-k) P_s(k) = 0 for r=" + to_string(r) +
                         ", s=" + to_string(s);
    report.range_min = 0;
    report.range_max = N;
    report.engine = std::string(engine_name(exp_r.engine)) + "+" +
                    std::string(engine_name(exp_s.engine));

    const auto start = std::chrono::steady_clock::now();
    const Rat ratio = r / s + 1;
    Rat sum, term;
    for (std::size_t n = 0; n <= N; ++n) {
        sum = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            const Rat& ps = exp_s.coefficients[k];
            if (ps == 0) continue;
            const Rat& pr = exp_r.coefficients[n - k];
            if (pr == 0) continue;
            term = ratio;
            term *= static_cast<long>(k);
            term -= static_cast<long>(n);
            term = -term; // n - (r/s + 1) k
            term *= pr;
            term *= ps;
            sum += term;
        }
        if (sum != 0) {
            report.counterexamples.push_back({n, to_string(sum)});
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

VerificationReport verify_sigma_identity(std::size_t N) {
    if (N < 1) throw DomainError("sigma identity requires N >= 1");

    VerificationReport report;
    report.description = "sum_d sigma(d) p(n-d) = n p(n)";
    report.range_min = 1;
    report.range_max = N;
    report.engine = "oracle";

    const auto start = std::chrono::steady_clock::now();
    const TruncatedSeries p = partition_series_oracle(N);
    std::vector<long> divisor_sums(N + 1);
    for (std::size_t d = 1; d <= N; ++d) {
        divisor_sums[d] = static_cast<long>(sigma(static_cast<long long>(d)));
    }

    Int sum, term;
    for (std::size_t n = 1; n <= N; ++n) {
        sum = 0;
        for (std::size_t d = 1; d <= n; ++d) {
            term = p[n - d].get_num();
            term *= divisor_sums[d];
            sum += term;
        }
        Int rhs = p[n].get_num();
        rhs *= static_cast<long>(n);
        if (sum != rhs) {
            report.counterexamples.push_back({n, Int(sum - rhs).get_str()});
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

} // namespace qcoeff
