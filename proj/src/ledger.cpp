// SPDX-License-Identifier: Apache-2.0
#include "bhevap/ledger.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bhevap/accum.hpp"
#include "bhevap/core.hpp"

namespace bhevap {

namespace {

void check_initial_mass(double m) {
    if (!std::isfinite(m) || m <= 0.0)
        throw std::domain_error("initial mass must be finite and positive");
}

void check_partition_energy(double e, double initial_mass) {
    if (!std::isfinite(e) || e <= 0.0)
        throw std::domain_error("emission energies must be finite and positive");
    if (e < 1e-15 * initial_mass) {
        std::ostringstream msg;
        msg << "emission energy " << e
            << " is below 1e-15 of the initial mass";
        throw std::domain_error(msg.str());
    }
}

// 8*pi*E*(m - E/2) as a double-double; m enters as an exact pair so the
// telescoping against the running remaining mass is error-free.
DoubleDouble self_info_dd(const DoubleDouble& m, double e) {
    const DoubleDouble t = dd_sub(m, 0.5 * e);
    return dd_mul(dd_mul(t, e), kEightPi);
}

double target_entropy(double initial_mass) {
    const TwoSum m2 = two_prod(initial_mass, initial_mass);
    return dd_mul(DoubleDouble{m2.value, m2.err}, kFourPi).to_double();
}

} // namespace

EntropyLedger::EntropyLedger(double initial_mass,
                             std::span<const double> energies)
    : initial_mass_(initial_mass) {
    check_initial_mass(initial_mass_);
    const double slop = 1e-12 * initial_mass_;

    entries_.reserve(energies.size());
    DoubleDouble remaining = dd_from(initial_mass_);
    NeumaierSum total;
    std::uint64_t index = 0;
    for (double e : energies) {
        check_partition_energy(e, initial_mass_);
        const DoubleDouble next = dd_sub(remaining, e);
        if (next.hi < -slop)
            throw std::domain_error("emissions exceed initial mass");
        const DoubleDouble info = self_info_dd(remaining, e);
        total.add(info);
        entries_.push_back(LedgerEntry{++index, e, remaining.to_double(),
                                       info.to_double()});
        remaining = next;
    }
    total_ = total.value();
    final_remaining_ = remaining.to_double();
}

double EntropyLedger::target() const { return target_entropy(initial_mass_); }

ConservationReport EntropyLedger::verify_conservation() const {
    ConservationReport report{};
    report.total = total_;
    report.target = target();
    report.is_exhausting =
        std::abs(final_remaining_) <= 1e-12 * initial_mass_;
    report.relative_residual =
        report.is_exhausting
            ? std::abs(total_ - report.target) / report.target
            : std::numeric_limits<double>::quiet_NaN();
    return report;
}

double partial_entropy(double initial_mass,
                       std::span<const double> energies) {
    check_initial_mass(initial_mass);
    DoubleDouble spent = dd_from(0.0);
    for (double e : energies) {
        check_partition_energy(e, initial_mass);
        spent = dd_add(spent, e);
    }
    if (spent.hi - initial_mass > 1e-12 * initial_mass)
        throw std::domain_error("emissions exceed initial mass");
    // 4*pi*(M^2 - m_final^2) = 4*pi * s * (2M - s) with s = sum(E).
    const DoubleDouble rest = dd_sub(dd_from(2.0 * initial_mass), spent);
    return dd_mul(dd_mul(spent, rest), kFourPi).to_double();
}

} // namespace bhevap
