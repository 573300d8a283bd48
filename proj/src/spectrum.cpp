// SPDX-License-Identifier: Apache-2.0
#include "bhevap/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bhevap/core.hpp"
#include "bhevap/dawson.hpp"

namespace bhevap {

SpectrumModel::SpectrumModel(double remaining_mass) : m_(remaining_mass) {
    if (!std::isfinite(m_) || m_ <= 0.0)
        throw std::domain_error("remaining mass must be finite and positive");
    x_m_ = kTwoSqrtPi * m_;
    log_dawson_xm_ = std::log(dawson(x_m_));
    log_z_ = log_dawson_xm_ - std::log(kTwoSqrtPi);
}

double SpectrumModel::log_density(double energy) const {
    if (!std::isfinite(energy) || energy <= 0.0 || energy > m_)
        throw std::domain_error("energy must lie in (0, m]");
    return -kEightPi * energy * (m_ - 0.5 * energy) - log_z_;
}

double SpectrumModel::log_survival(double energy) const {
    if (energy == 0.0) return 0.0;
    if (energy == m_) return -std::numeric_limits<double>::infinity();
    const double x_e = kTwoSqrtPi * (m_ - energy);
    return -kEightPi * energy * (m_ - 0.5 * energy) + std::log(dawson(x_e)) -
           log_dawson_xm_;
}

double SpectrumModel::cdf(double energy) const {
    if (!std::isfinite(energy) || energy < 0.0 || energy > m_)
        throw std::domain_error("energy must lie in [0, m]");
    return -std::expm1(log_survival(energy));
}

double SpectrumModel::quantile(double u) const {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::domain_error("quantile argument must lie in (0, 1)");
    const double target = std::log1p(-u); // ln S at the sought energy

    double lo = 0.0; // ln S(lo) > target
    double hi = m_;  // ln S(hi) < target

    // Exponential-tail first guess -ln(1-u)/(8 pi m), clamped inside (0, m).
    double e = -target / (kEightPi * m_);
    if (!(e > 0.0) || e >= m_) e = 0.5 * m_;

    const double tol = 1e-15 * m_;
    for (int iter = 0; iter < 200; ++iter) {
        const double f = log_survival(e) - target;
        if (f == 0.0) return e;
        if (f > 0.0)
            lo = e;
        else
            hi = e;
        if (hi - lo <= tol) return 0.5 * (lo + hi);

        // d lnS / dE = -p(E)/S(E); fall back to bisection whenever the Newton
        // step leaves the bracket.
        const double slope =
            -std::exp(log_density(e) - (f + target));
        double next = e - f / slope;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - e) <= tol) return next;
        e = next;
    }
    throw std::runtime_error("spectrum quantile did not converge");
}

double SpectrumModel::mean_energy() const {
    // Direct closed form loses ~2 x_m^2 eps relative accuracy; past m = 32
    // the asymptotic expansion in 1/x_m^2 is already exact to double.
    if (m_ > 32.0) {
        const double inv_x2 = 1.0 / (x_m_ * x_m_);
        return (1.0 + inv_x2 + 2.5 * inv_x2 * inv_x2) / (kEightPi * m_);
    }
    const double released = -std::expm1(-kFourPi * m_ * m_);
    return m_ - released / (kEightPi * std::exp(log_z_));
}

} // namespace bhevap
