// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace bhevap {

// Dawson's integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt for x >= 0.
// Absolute error stays below ~5e-16 on [0, 50]. Throws std::domain_error for
// negative or non-finite input.
double dawson(double x);

} // namespace bhevap
