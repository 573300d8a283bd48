// SPDX-License-Identifier: Apache-2.0
#include "bhevap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bhevap/core.hpp"

namespace bhevap::quadrature {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr int kMaxDepth = 10;
constexpr double kTol = 1e-14;

void check_mass(double m) {
    if (!std::isfinite(m) || m <= 0.0)
        throw std::domain_error("mass must be finite and positive");
}

// int_a^b f for a non-negative unimodal integrand with peak value of order
// one near a: explicit splits at the decay scale, adaptive Gauss-Kronrod per
// piece, and the far tail dropped once the integrand falls below 1e-25
// everywhere on a piece (relative contribution beyond that is < 1e-18).
template <typename F>
double piecewise_integral(F f, double a, double b, double scale) {
    std::vector<double> knots{a};
    for (double c = a + scale; c < b; c *= 2.0) {
        knots.push_back(c);
        if (knots.size() > 80) break;
    }
    knots.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double l = knots[i];
        const double r = knots[i + 1];
        const double probe =
            std::max({f(l), f(0.5 * (l + r)), f(r)});
        if (i > 0 && probe < 1e-25) break;
        total += GK::integrate(f, l, r, kMaxDepth, kTol);
    }
    return total;
}

} // namespace

double tunneling_log_integral(double m, double a, double b) {
    check_mass(m);
    if (!(a >= 0.0) || !(b <= m) || !(a < b))
        throw std::domain_error("integration bounds must satisfy 0<=a<b<=m");
    // The exponent -8*pi*E*(m - E/2) decreases in E, so its maximum over
    // [a, b] sits at a; factor it out and integrate values in [0, 1].
    const double g_a = -kEightPi * a * (m - 0.5 * a);
    auto scaled = [m, a, g_a](double e) {
        return std::exp(-kEightPi * e * (m - 0.5 * e) - g_a);
    };
    const double scale = std::min(b - a, 1.0 / (kEightPi * m + 1.0 / (b - a)));
    return g_a + std::log(piecewise_integral(scaled, a, b, scale));
}

double log_normalizer(double m) {
    check_mass(m);
    return tunneling_log_integral(m, 0.0, m);
}

double cdf(double m, double energy) {
    check_mass(m);
    if (!(energy >= 0.0) || !(energy <= m))
        throw std::domain_error("energy must lie in [0, m]");
    if (energy == 0.0) return 0.0;
    if (energy == m) return 1.0;
    return std::exp(tunneling_log_integral(m, 0.0, energy) -
                    log_normalizer(m));
}

double moment(double m, int order) {
    check_mass(m);
    if (order < 0) throw std::domain_error("moment order must be >= 0");
    const double log_z = log_normalizer(m);
    auto f = [m, order, log_z](double e) {
        const double w = std::exp(-kEightPi * e * (m - 0.5 * e) - log_z);
        return std::pow(e, order) * w;
    };
    const double scale = std::min(m, (order + 1.0) / (kEightPi * m + 1.0 / m));
    return piecewise_integral(f, 0.0, m, scale);
}

double dawson(double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("dawson requires finite non-negative input");
    if (x == 0.0) return 0.0;
    auto f = [x](double s) { return std::exp(-s * (2.0 * x - s)); };
    const double scale = std::min(x, 1.0 / (2.0 * x + 1.0 / x));
    return piecewise_integral(f, 0.0, x, scale);
}

} // namespace bhevap::quadrature
