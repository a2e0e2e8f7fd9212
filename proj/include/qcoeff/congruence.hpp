#ifndef QCOEFF_CONGRUENCE_HPP
#define QCOEFF_CONGRUENCE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qcoeff/arith.hpp"
#include "qcoeff/expand.hpp"
#include "qcoeff/report.hpp"

namespace qcoeff {

/// One congruence family: P_r(m*modulus + n_residue) = 0 (mod modulus)
/// whenever r falls in r_residue.
struct CongruenceFamily {
    long modulus;
    Residue n_residue;
    Residue r_residue;

    /// Display form of the index class, e.g. "5m+4".
    std::string name() const;
};

/// The four modulus-5 families, in index-class order 5m+4, 5m+1, 5m+2, 5m+3.
std::vector<CongruenceFamily> companion_presets();

/// Looks a preset up by its name() ("5m+4", ...). Throws ParseError on
/// unknown names.
CongruenceFamily preset_by_name(const std::string& name);

/// The preset whose required exponent residue matches r. Throws
/// ResidueMismatch when no family covers r's residue class.
CongruenceFamily preset_for_exponent(const Rat& r);

/// Reduces P_r(modulus*m + a) for m in 0..m_max and records every nonzero
/// residue. Throws ResidueMismatch when r is not in the family's residue
/// class and OrderTooSmall when the expansion is short.
VerificationReport scan_family(const CongruenceFamily& family, const Rat& r, std::size_t m_max,
                               const SeriesExpansion& expansion);

/// Classification of a recurrence term by j mod 5, mirroring the residue of
/// its factor (2j+1)(n + (r/3-1)T_j) when n = 4 and r = 1 (mod 5):
/// j=1: factor = 9+r = 0; j=2: factor carries 5(1+r); j=3: factor = 2(2r-2) = 0;
/// j=4,0: T_j = 0 (mod 5), so the term's argument stays in the 5m+4 class.
enum class CaseLabel {
    J1Factor9PlusR,
    J2FactorFiveTimes,
    J3Factor2TwoRMinus2,
    J45InductionIndex,
};

std::string_view case_label_name(CaseLabel label);

/// One term of the sparse recurrence for a fixed n, with its exact factor
/// and the factor's residue mod 5.
struct TraceTerm {
    long long j;
    long long t_j;           // j(j+1)/2
    int sign;                // (-1)^{j+1}
    Rat factor_value;        // (2j+1)(n + (r/3-1)T_j)
    Residue factor_residue;  // factor_value mod 5
    CaseLabel label;
    long long argument_index; // n - T_j
};

/// Term-by-term decomposition of n c[n] for one n, with the induction
/// bookkeeping checked: reconstruction_ok means the signed factors times
/// the table entries sum back to n c[n]; classification_ok means every term
/// either has factor residue 0 or argument index in the 5m+4 class
/// (evaluated only when n = 4 and r = 1 mod 5, see classification_applicable).
struct ProofTrace {
    long long n;
    Rat r;
    std::vector<TraceTerm> terms;
    bool reconstruction_ok = false;
    bool classification_applicable = false;
    bool classification_ok = true;
};

ProofTrace trace_proof_step(long long n, const Rat& r, const SeriesExpansion& expansion);

} // namespace qcoeff

#endif
