#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace klein {

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    //! Test mode: "sign-flip" swaps in a closed form with the E*V0 sign flipped.
    std::string fault;
};

struct PropertyResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;  // parameter tuple for reproduction

    bool passed() const { return failures == 0 && checks > 0; }
};

struct VerifyReport {
    std::vector<PropertyResult> properties;

    bool passed() const;
};

//! Names in report order.
std::vector<std::string> property_names();

/*!
 * Seeded randomized property suite: boundedness, oracle equivalence,
 * unitarity, transfer equivalence, exchange symmetry, gap platform, alley,
 * resonance, flux conservation, continuity, massless transmission and the
 * small-mass bound.
 */
VerifyReport run_property_suite(const VerifyOptions& options);

}  // namespace klein
