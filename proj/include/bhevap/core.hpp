// SPDX-License-Identifier: Apache-2.0
//
// Exact tunneling probabilities for black-hole emission, joint/conditional
// probabilities over emission lists, and the two correlation identities.
// Everything here is a pure function working in log domain; nothing is
// normalized (the spectrum module owns normalization).
#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace bhevap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * kPi;
inline constexpr double kEightPi = 8.0 * kPi;
inline constexpr double kTwoSqrtPi = 3.5449077018110320546; // 2*sqrt(pi)

// Schwarzschild hole of mass M in natural units. Area and entropy are always
// derived from the mass, never stored.
class BlackHoleState {
  public:
    explicit BlackHoleState(double mass); // throws std::domain_error
    double mass() const { return mass_; }
    double bh_entropy() const;                           // 4*pi*M^2
    double horizon_area() const { return 4.0 * bh_entropy(); } // 16*pi*M^2

  private:
    double mass_;
};

// Natural log of a probability. Conversion to a linear probability is an
// explicit, lossy operation: exp(log_value) underflows to zero once the
// magnitude exceeds ~745 (e.g. exp(-4*pi*M^2) for M >~ 7.7).
struct LogProb {
    double log_value = 0.0; // <= 0

    double linear() const;
};

// Log tunneling probability -8*pi*E*(M - E/2) of a single emission.
// Requires 0 <= E <= M. Zero iff E == 0.
LogProb delta_s(const BlackHoleState& state, double energy);

// Log probability of a list of emissions: depends on the total energy only,
// so it is invariant under permutation and re-partition of the list.
LogProb joint_log_prob(const BlackHoleState& state,
                       std::span<const double> energies);

// Log probability of one more emission given an emission history; equals
// delta_s evaluated at the remaining mass M - sum(history).
LogProb conditional_log_prob(const BlackHoleState& state,
                             std::span<const double> history, double energy);

// ln P(E3|E2,E1) - ln P(E3|E2). Analytically 8*pi*E1*E3, independent of E2
// and of the mass; computed from the conditional difference with error-free
// transforms so the cancellation is exact to double rounding.
double markov_violation(const BlackHoleState& state, double e1, double e2,
                        double e3);

// Correlation between two emissions, 8*pi*E1*E2 (symmetric, non-negative).
double pair_correlation(double e1, double e2);

// Definitional route ln P(E1,E2) - ln P(E1) - ln P(E2) at a given mass; the
// mass dependence cancels and the result equals pair_correlation(e1, e2).
double pair_correlation_log_form(const BlackHoleState& state, double e1,
                                 double e2);

// Ordered list of strictly positive emission energies with the derived
// remaining-mass trajectory. Energies below 1e-15 * initial mass are rejected
// as numerically indistinguishable from zero.
class EmissionSequence {
  public:
    EmissionSequence(double initial_mass, std::vector<double> energies);

    double initial_mass() const { return initial_mass_; }
    const std::vector<double>& energies() const { return energies_; }
    // remaining_masses()[i] is the mass left after the first i emissions;
    // index 0 is the initial mass.
    const std::vector<double>& remaining_masses() const { return remaining_; }
    std::size_t size() const { return energies_.size(); }
    // True when the energies sum to the initial mass (within 1e-12 * M).
    bool is_exhausting() const;

  private:
    double initial_mass_;
    std::vector<double> energies_;
    std::vector<double> remaining_;
};

} // namespace bhevap
