// SPDX-License-Identifier: Apache-2.0
//
// Error-free transforms and compensated accumulation. The exact identities in
// this project cancel quantities of order 4*pi*M^2 down to results that can be
// orders of magnitude smaller, so the intermediate arithmetic is carried as
// unevaluated double-double pairs and long sums use Neumaier compensation.
#pragma once

#include <cmath>

namespace bhevap {

struct TwoSum {
    double value;
    double err;
};

// Knuth two-sum: value + err == a + b exactly.
inline TwoSum two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// value + err == a * b exactly (FMA-based Dekker product).
inline TwoSum two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2 after renormalization.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    double to_double() const { return hi + lo; }
};

inline DoubleDouble dd_renorm(double hi, double lo) {
    const TwoSum s = two_sum(hi, lo);
    return {s.value, s.err};
}

inline DoubleDouble dd_from(double x) { return {x, 0.0}; }

inline DoubleDouble dd_add(const DoubleDouble& a, double b) {
    const TwoSum s = two_sum(a.hi, b);
    return dd_renorm(s.value, s.err + a.lo);
}

inline DoubleDouble dd_sub(const DoubleDouble& a, double b) {
    return dd_add(a, -b);
}

inline DoubleDouble dd_add(const DoubleDouble& a, const DoubleDouble& b) {
    const TwoSum s = two_sum(a.hi, b.hi);
    return dd_renorm(s.value, s.err + a.lo + b.lo);
}

inline DoubleDouble dd_sub(const DoubleDouble& a, const DoubleDouble& b) {
    const TwoSum s = two_sum(a.hi, -b.hi);
    return dd_renorm(s.value, s.err + a.lo - b.lo);
}

inline DoubleDouble dd_mul(const DoubleDouble& a, double b) {
    const TwoSum p = two_prod(a.hi, b);
    return dd_renorm(p.value, p.err + a.lo * b);
}

inline DoubleDouble dd_mul(const DoubleDouble& a, const DoubleDouble& b) {
    const TwoSum p = two_prod(a.hi, b.hi);
    return dd_renorm(p.value, p.err + a.hi * b.lo + a.lo * b.hi);
}

inline DoubleDouble dd_neg(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

// Kahan-Babuska (Neumaier) compensated summation.
class NeumaierSum {
  public:
    void add(double v) {
        const TwoSum s = two_sum(sum_, v);
        sum_ = s.value;
        comp_ += s.err;
    }

    void add(const DoubleDouble& v) {
        add(v.hi);
        add(v.lo);
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace bhevap
