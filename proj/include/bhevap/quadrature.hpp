// SPDX-License-Identifier: Apache-2.0
//
// Adaptive-quadrature oracle used by the verification suites and tests. Every
// closed form in the spectrum module is cross-checked against these routines;
// they share no code with the Dawson-based evaluation path. Not used on any
// runtime path.
#pragma once

namespace bhevap::quadrature {

// ln of int_a^b exp(-8*pi*E*(m - E/2)) dE, evaluated in log domain (the
// integrand maximum at E = a is factored out) with explicit subinterval
// splits at the E -> a decay scale. Relative accuracy ~1e-13.
double tunneling_log_integral(double m, double a, double b);

// ln Z(m) by quadrature over (0, m].
double log_normalizer(double m);

// CDF and raw moments of the normalized density by quadrature.
double cdf(double m, double energy);
double moment(double m, int order);

// Dawson's integral via its defining integral, rewritten by the exact
// substitution s = x - t as int_0^x exp(-s*(2x - s)) ds, which keeps the
// integrand in [0, 1] for every x. Absolute accuracy ~1e-15.
double dawson(double x);

} // namespace bhevap::quadrature
