#ifndef QCOEFF_REPORT_HPP
#define QCOEFF_REPORT_HPP

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace qcoeff {

/// An index where an exact check failed, with the offending value or residue.
struct Counterexample {
    std::size_t index;
    std::string observed;
};

/// Result of an exact verification sweep. Empty counterexamples means every
/// index in [range_min, range_max] passed.
struct VerificationReport {
    std::string description;
    std::size_t range_min = 0;
    std::size_t range_max = 0;
    std::vector<Counterexample> counterexamples;
    std::chrono::duration<double> elapsed{0};
    std::string engine;

    bool passed() const noexcept { return counterexamples.empty(); }
};

} // namespace qcoeff

#endif
