// SPDX-License-Identifier: Apache-2.0
//
// Normalized per-emission energy distribution at remaining mass m.
//
// The unnormalized emission weight exp(-8*pi*E*(m - E/2)) is truncated to
// E in (0, m] and normalized; that normalization is a modeling step (sampling
// needs a proper distribution) and stays strictly out of the exact log-domain
// identities in core/ledger. Completing the square gives the closed forms
//
//   Z(m)            = D(x_m) / (2 sqrt(pi)),            x_m = 2 sqrt(pi) m
//   survival S(E)   = exp(dS(E)) * D(x_E) / D(x_m),     x_E = 2 sqrt(pi)(m-E)
//   mean            = m - (1 - exp(-4 pi m^2)) / (8 pi Z(m))
//
// with dS(E) = -8*pi*E*(m - E/2) and D the Dawson function. All CDF/survival
// evaluations run in log domain through D; erfi-style direct forms overflow
// for m >~ 7.5 and are never used.
#pragma once

namespace bhevap {

class SpectrumModel {
  public:
    explicit SpectrumModel(double remaining_mass); // throws std::domain_error

    double remaining_mass() const { return m_; }
    double log_normalizer() const { return log_z_; } // ln Z(m)

    // ln p(E) = dS(E) - ln Z(m) for E in (0, m].
    double log_density(double energy) const;

    // P(emission <= E); exactly 0 at E = 0 and 1 at E = m.
    double cdf(double energy) const;

    // Inverse CDF for u in the open interval (0,1); result lies in (0, m).
    // Bracketed Newton/bisection on the log-survival function; throws
    // std::runtime_error if 200 iterations do not converge.
    double quantile(double u) const;

    // Closed-form mean emission energy; approaches the Hawking temperature
    // 1/(8 pi m) as m grows.
    double mean_energy() const;

  private:
    double log_survival(double energy) const; // ln S(E), <= 0

    double m_;
    double x_m_;
    double log_dawson_xm_;
    double log_z_;
};

} // namespace bhevap
