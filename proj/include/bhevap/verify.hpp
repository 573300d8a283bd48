// SPDX-License-Identifier: Apache-2.0
//
// Self-verification suites behind the CLI `verify` command. Each check sweeps
// one invariant (identity cancellation, closed form vs quadrature oracle,
// sampler goodness of fit) and reports its worst observed deviation against
// the pinned tolerance.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bhevap::verify {

struct CheckResult {
    std::string name;
    bool passed;
    double worst;     // worst observed deviation
    double tolerance;
    std::string detail;
};

// Markov-violation, pair-correlation, conditional closed-form/Bayes-ratio
// agreement, joint partition invariance, pathwise entropy conservation.
std::vector<CheckResult> identity_checks(std::uint64_t seed,
                                         std::size_t trials);

// Dawson and spectrum closed forms against the quadrature oracle, CDF and
// quantile consistency, Hawking-temperature asymptotics.
std::vector<CheckResult> spectrum_checks();

// Sampler fidelity: KS distance and moment agreement under a fixed seed,
// stream reproducibility, conservation on sampled paths. sampler_bias != 0
// distorts the uniform variates (negative-path testing hook).
std::vector<CheckResult> sampling_checks(std::uint64_t seed,
                                         double sampler_bias);

std::vector<CheckResult> all_checks(std::uint64_t seed, double sampler_bias);

} // namespace bhevap::verify
