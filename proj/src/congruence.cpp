#include "qcoeff/congruence.hpp"

#include <chrono>

namespace qcoeff {

std::string CongruenceFamily::name() const {
    return std::to_string(modulus) + "m+" + std::to_string(n_residue.value);
}

std::vector<CongruenceFamily> companion_presets() {
    return {
        CongruenceFamily{5, Residue{4, 5}, Residue{1, 5}},
        CongruenceFamily{5, Residue{1, 5}, Residue{0, 5}},
        CongruenceFamily{5, Residue{2, 5}, Residue{2, 5}},
        CongruenceFamily{5, Residue{3, 5}, Residue{4, 5}},
    };
}

CongruenceFamily preset_by_name(const std::string& name) {
    for (const CongruenceFamily& family : companion_presets()) {
        if (family.name() == name) return family;
    }
    throw ParseError("unknown congruence family '" + name +
                     "' (expected 5m+4, 5m+1, 5m+2 or 5m+3)");
}

CongruenceFamily preset_for_exponent(const Rat& r) {
    const Residue r_res = reduce_mod(r, 5);
    for (const CongruenceFamily& family : companion_presets()) {
        if (family.r_residue == r_res) return family;
    }
    throw ResidueMismatch("no congruence family requires r = " + std::to_string(r_res.value) +
                          " (mod 5); families cover residues 1, 0, 2 and 4");
}

VerificationReport scan_family(const CongruenceFamily& family, const Rat& r, std::size_t m_max,
                               const SeriesExpansion& expansion) {
    const Residue r_res = reduce_mod(r, family.modulus);
    if (r_res != family.r_residue) {
        throw ResidueMismatch("family " + family.name() + " requires r = " +
                              std::to_string(family.r_residue.value) + " (mod " +
                              std::to_string(family.modulus) + "), but r = " + to_string(r) +
                              " has residue " + std::to_string(r_res.value));
    }
    if (expansion.exponent != r) {
        throw DomainError("expansion holds exponent " + to_string(expansion.exponent) +
                          ", expected " + to_string(r));
    }
    const std::size_t a = static_cast<std::size_t>(family.n_residue.value);
    const std::size_t top = static_cast<std::size_t>(family.modulus) * m_max + a;
    if (expansion.order < top) {
        throw OrderTooSmall("scan needs coefficients through n=" + std::to_string(top) +
                            ", expansion stops at " + std::to_string(expansion.order));
    }

    VerificationReport report;
    report.description = "P_r(" + family.name() + ") = 0 (mod " + std::to_string(family.modulus) +
                         ") for r=" + to_string(r);
    report.range_min = a;
    report.range_max = top;
    report.engine = std::string(engine_name(expansion.engine));

    const auto start = std::chrono::steady_clock::now();
    for (std::size_t m = 0; m <= m_max; ++m) {
        const std::size_t n = static_cast<std::size_t>(family.modulus) * m + a;
        const Residue res = reduce_mod(expansion.coefficients[n], family.modulus);
        if (res.value != 0) {
            report.counterexamples.push_back({n, std::to_string(res.value)});
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

std::string_view case_label_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::J1Factor9PlusR: return "J1";
        case CaseLabel::J2FactorFiveTimes: return "J2";
        case CaseLabel::J3Factor2TwoRMinus2: return "J3";
        case CaseLabel::J45InductionIndex: return "J45";
    }
    return "unknown";
}

namespace {

CaseLabel classify(long long j) {
    switch (j % 5) {
        case 1: return CaseLabel::J1Factor9PlusR;
        case 2: return CaseLabel::J2FactorFiveTimes;
        case 3: return CaseLabel::J3Factor2TwoRMinus2;
        default: return CaseLabel::J45InductionIndex; // j = 4 or 0 (mod 5)
    }
}

} // namespace

ProofTrace trace_proof_step(long long n, const Rat& r, const SeriesExpansion& expansion) {
    if (n < 1) throw DomainError("trace requires n >= 1");
    if (expansion.order < static_cast<std::size_t>(n)) {
        throw OrderTooSmall("trace at n=" + std::to_string(n) + " needs the expansion that far");
    }
    if (expansion.exponent != r) {
        throw DomainError("expansion holds exponent " + to_string(expansion.exponent) +
                          ", expected " + to_string(r));
    }

    ProofTrace trace;
    trace.n = n;
    trace.r = r;
    const Residue r_res = reduce_mod(r, 5);
    trace.classification_applicable = (n % 5 == 4) && (r_res.value == 1);

    const Rat slope = r / 3 - 1;
    Rat sum, factor, term;
    sum = 0;
    for (long long j = 1;; ++j) {
        const long long t = j * (j + 1) / 2;
        if (t > n) break;
        factor = slope;
        factor *= static_cast<long>(t);
        factor += static_cast<long>(n);
        factor *= static_cast<long>(2 * j + 1);
        const int sign = j % 2 == 0 ? -1 : 1;
        const Residue factor_res = reduce_mod(factor, 5);
        const CaseLabel label = classify(j);
        const long long argument = n - t;

        term = factor;
        term *= expansion.coefficients[static_cast<std::size_t>(argument)];
        if (sign < 0) term = -term;
        sum += term;

        if (trace.classification_applicable) {
            if (label == CaseLabel::J45InductionIndex) {
                if (argument % 5 != 4) trace.classification_ok = false;
            } else if (factor_res.value != 0) {
                trace.classification_ok = false;
            }
        }
        trace.terms.push_back({j, t, sign, factor, factor_res, label, argument});
    }

    Rat lhs = expansion.coefficients[static_cast<std::size_t>(n)];
    lhs *= static_cast<long>(n);
    trace.reconstruction_ok = (sum == lhs);
    return trace;
}

} // namespace qcoeff
