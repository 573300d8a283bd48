// SPDX-License-Identifier: Apache-2.0
#include "bhevap/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bhevap/accum.hpp"

namespace bhevap {

namespace {

// Relative slop admitted at the "sum of energies == mass" boundary; lists that
// exhaust the hole exactly in real arithmetic may overshoot by a few ulps
// after per-element rounding.
constexpr double kBoundarySlop = 1e-15;

[[noreturn]] void throw_domain(const char* what) {
    throw std::domain_error(what);
}

void check_mass(double mass) {
    if (!std::isfinite(mass) || mass <= 0.0)
        throw_domain("mass must be finite and positive");
}

void check_energy(double e) {
    if (!std::isfinite(e) || e < 0.0)
        throw_domain("energy must be finite and non-negative");
}

// -8*pi*E*(m_eff - E/2) carried as a double-double. m_eff and E enter as
// exact pairs so that differences of two exponents cancel without rounding.
DoubleDouble exponent_dd(const DoubleDouble& m_eff, const DoubleDouble& e) {
    const DoubleDouble half_e{0.5 * e.hi, 0.5 * e.lo}; // exact scaling
    const DoubleDouble t = dd_sub(m_eff, half_e);
    const DoubleDouble u = dd_mul(t, e);
    return dd_mul(u, -kEightPi);
}

DoubleDouble sum_dd(std::span<const double> values) {
    DoubleDouble s = dd_from(0.0);
    for (double v : values) s = dd_add(s, v);
    return s;
}

} // namespace

BlackHoleState::BlackHoleState(double mass) : mass_(mass) { check_mass(mass); }

double BlackHoleState::bh_entropy() const {
    const TwoSum m2 = two_prod(mass_, mass_);
    return dd_mul(DoubleDouble{m2.value, m2.err}, kFourPi).to_double();
}

double LogProb::linear() const { return std::exp(log_value); }

LogProb delta_s(const BlackHoleState& state, double energy) {
    check_energy(energy);
    if (energy > state.mass())
        throw_domain("emission exceeds remaining mass");
    return {exponent_dd(dd_from(state.mass()), dd_from(energy)).to_double()};
}

LogProb joint_log_prob(const BlackHoleState& state,
                       std::span<const double> energies) {
    for (double e : energies) check_energy(e);
    const DoubleDouble total = sum_dd(energies);
    if (total.hi - state.mass() > kBoundarySlop * state.mass())
        throw_domain("emissions exceed remaining mass");
    return {exponent_dd(dd_from(state.mass()), total).to_double()};
}

namespace {

// Conditional exponent at the remaining mass M - sum(history).
DoubleDouble conditional_dd(const BlackHoleState& state,
                            std::span<const double> history, double energy) {
    for (double e : history) check_energy(e);
    check_energy(energy);
    const DoubleDouble spent = dd_add(sum_dd(history), energy);
    if (spent.hi - state.mass() > kBoundarySlop * state.mass())
        throw_domain("emissions exceed remaining mass");
    const DoubleDouble m_eff = dd_sub(dd_from(state.mass()), sum_dd(history));
    return exponent_dd(m_eff, dd_from(energy));
}

} // namespace

LogProb conditional_log_prob(const BlackHoleState& state,
                             std::span<const double> history, double energy) {
    return {conditional_dd(state, history, energy).to_double()};
}

double markov_violation(const BlackHoleState& state, double e1, double e2,
                        double e3) {
    const double h12[] = {e1, e2};
    const double h2[] = {e2};
    const DoubleDouble with_e1 = conditional_dd(state, h12, e3);
    const DoubleDouble without_e1 = conditional_dd(state, h2, e3);
    return dd_sub(with_e1, without_e1).to_double();
}

double pair_correlation(double e1, double e2) {
    check_energy(e1);
    check_energy(e2);
    return kEightPi * (e1 * e2); // grouped so the symmetry is bitwise
}

double pair_correlation_log_form(const BlackHoleState& state, double e1,
                                 double e2) {
    check_energy(e1);
    check_energy(e2);
    const TwoSum total = two_sum(e1, e2);
    if (total.value - state.mass() > kBoundarySlop * state.mass())
        throw_domain("emissions exceed remaining mass");
    const DoubleDouble m = dd_from(state.mass());
    const DoubleDouble joint = exponent_dd(m, {total.value, total.err});
    const DoubleDouble lone1 = exponent_dd(m, dd_from(e1));
    const DoubleDouble lone2 = exponent_dd(m, dd_from(e2));
    return dd_sub(dd_sub(joint, lone1), lone2).to_double();
}

EmissionSequence::EmissionSequence(double initial_mass,
                                   std::vector<double> energies)
    : initial_mass_(initial_mass), energies_(std::move(energies)) {
    check_mass(initial_mass_);
    remaining_.reserve(energies_.size() + 1);
    remaining_.push_back(initial_mass_);
    const double floor = 1e-15 * initial_mass_;
    const double slop = 1e-12 * initial_mass_;
    double m = initial_mass_;
    for (std::size_t i = 0; i < energies_.size(); ++i) {
        const double e = energies_[i];
        if (!std::isfinite(e) || e <= 0.0)
            throw_domain("emission energies must be finite and positive");
        if (e < floor) {
            std::ostringstream msg;
            msg << "emission energy " << e
                << " is below 1e-15 of the initial mass";
            throw std::domain_error(msg.str());
        }
        double next = m - e;
        if (next < -slop) throw_domain("emissions exceed initial mass");
        if (next < 0.0) next = 0.0;
        if (next >= m) throw_domain("remaining mass must strictly decrease");
        remaining_.push_back(next);
        m = next;
    }
}

bool EmissionSequence::is_exhausting() const {
    return remaining_.back() <= 1e-12 * initial_mass_;
}

} // namespace bhevap
