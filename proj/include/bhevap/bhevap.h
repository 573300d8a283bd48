/* SPDX-License-Identifier: Apache-2.0
 *
 * bhevap — black-hole evaporation as quantum tunneling, C API.
 *
 * C-compatible surface of the shared library. Handles are opaque; every
 * function that can fail returns a status code and writes results through
 * out-pointers. A human-readable message for the most recent failure on the
 * calling thread is available via bhevap_last_error().
 *
 * Conventions: natural units (k = hbar = c = G = 1); all probabilities are
 * natural-log values ("log-prob", always <= 0); entropies are in nats.
 */
#ifndef BHEVAP_H
#define BHEVAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BHEVAP_API __declspec(dllexport)
#else
#define BHEVAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ---- status codes ---- */
enum {
    BHEVAP_OK = 0,
    BHEVAP_ERR_DOMAIN = 1,      /* precondition violated / invalid value   */
    BHEVAP_ERR_CONVERGENCE = 2, /* iterative solve failed to converge      */
    BHEVAP_ERR_INVALID = 3,     /* null pointer or bad handle              */
    BHEVAP_ERR_INTERNAL = 4
};

BHEVAP_API const char* bhevap_version(void);

/* Message for the last failing call on this thread ("" if none). */
BHEVAP_API const char* bhevap_last_error(void);

/* ---- exact tunneling probabilities (log domain) ----
 *
 * delta_s: log tunneling probability -8*pi*E*(M - E/2) for one emission of
 * energy E from a hole of mass M. joint/conditional extend it to emission
 * lists; markov_violation and pair_correlation are the two correlation
 * identities (both equal 8*pi*E_a*E_b analytically).
 */
BHEVAP_API int bhevap_delta_s(double mass, double energy, double* out);
BHEVAP_API int bhevap_joint_log_prob(double mass, const double* energies,
                                     size_t count, double* out);
BHEVAP_API int bhevap_conditional_log_prob(double mass, const double* history,
                                           size_t count, double energy,
                                           double* out);
BHEVAP_API int bhevap_markov_violation(double mass, double e1, double e2,
                                       double e3, double* out);
BHEVAP_API int bhevap_pair_correlation(double e1, double e2, double* out);
/* Definitional three-term form ln P(E1,E2) - ln P(E1) - ln P(E2) at a given
 * mass; agrees with bhevap_pair_correlation independently of mass. */
BHEVAP_API int bhevap_pair_correlation_log_form(double mass, double e1,
                                                double e2, double* out);
BHEVAP_API int bhevap_bh_entropy(double mass, double* out);   /* 4*pi*M^2  */
BHEVAP_API int bhevap_horizon_area(double mass, double* out); /* 16*pi*M^2 */

/* ---- entropy ledger (chain rule over an emission sequence) ---- */
typedef struct bhevap_ledger bhevap_ledger;

typedef struct {
    uint64_t index; /* 1-based */
    double energy;
    double remaining_mass_before;
    double conditional_self_info; /* nats, >= 0 */
} bhevap_ledger_entry;

typedef struct {
    int is_exhausting; /* sum(energies) == initial mass within 1e-12*M */
    double total;      /* compensated sum of per-entry self-information */
    double target;     /* 4*pi*M^2 */
    double relative_residual; /* |total-target|/target; NaN if not exhausting */
} bhevap_conservation_report;

BHEVAP_API int bhevap_ledger_build(double initial_mass, const double* energies,
                                   size_t count, bhevap_ledger** out);
BHEVAP_API void bhevap_ledger_free(bhevap_ledger* ledger);
BHEVAP_API size_t bhevap_ledger_size(const bhevap_ledger* ledger);
BHEVAP_API int bhevap_ledger_entry_at(const bhevap_ledger* ledger, size_t i,
                                      bhevap_ledger_entry* out);
BHEVAP_API int bhevap_ledger_total(const bhevap_ledger* ledger, double* out);
BHEVAP_API int bhevap_ledger_verify(const bhevap_ledger* ledger,
                                    bhevap_conservation_report* out);
/* Closed form 4*pi*(M^2 - m_final^2); equals the ledger total. */
BHEVAP_API int bhevap_partial_entropy(double initial_mass,
                                      const double* energies, size_t count,
                                      double* out);

/* ---- normalized emission spectrum at remaining mass m ---- */
typedef struct bhevap_spectrum bhevap_spectrum;

BHEVAP_API int bhevap_dawson(double x, double* out);
BHEVAP_API int bhevap_spectrum_create(double remaining_mass,
                                      bhevap_spectrum** out);
BHEVAP_API void bhevap_spectrum_free(bhevap_spectrum* model);
BHEVAP_API int bhevap_spectrum_log_normalizer(const bhevap_spectrum* model,
                                              double* out);
BHEVAP_API int bhevap_spectrum_log_density(const bhevap_spectrum* model,
                                           double energy, double* out);
BHEVAP_API int bhevap_spectrum_cdf(const bhevap_spectrum* model, double energy,
                                   double* out);
BHEVAP_API int bhevap_spectrum_quantile(const bhevap_spectrum* model, double u,
                                        double* out);
BHEVAP_API int bhevap_spectrum_mean_energy(const bhevap_spectrum* model,
                                           double* out);

/* ---- reproducible random streams ----
 *
 * Counter-based SplitMix64 streams: identical (seed, stream_id) reproduces an
 * identical sequence bit for bit; distinct stream ids are independent.
 */
typedef struct bhevap_rng bhevap_rng;

BHEVAP_API int bhevap_rng_create(uint64_t seed, uint64_t stream_id,
                                 bhevap_rng** out);
BHEVAP_API void bhevap_rng_free(bhevap_rng* rng);
BHEVAP_API int bhevap_rng_next_open01(bhevap_rng* rng, double* out);

/* One inverse-transform sample from the spectrum at remaining mass m. */
BHEVAP_API int bhevap_sample_emission(double remaining_mass, bhevap_rng* rng,
                                      double* out);

/* ---- evaporation simulation ---- */
typedef struct {
    double initial_mass;
    double cutoff_mass; /* stop once remaining mass falls to or below this */
    uint64_t max_emissions;
    uint64_t runs;
    uint64_t seed;
} bhevap_sim_config;

typedef struct bhevap_run bhevap_run;
typedef struct bhevap_ensemble bhevap_ensemble;

typedef struct {
    uint64_t runs;
    uint64_t exhaustive_runs;
    double count_mean;
    double count_stddev;
    double first_emission_mean;
    double max_relative_residual; /* over exhaustive runs; NaN if none */
} bhevap_ensemble_stats;

BHEVAP_API int bhevap_simulate_run(const bhevap_sim_config* config,
                                   uint64_t stream_id, bhevap_run** out);
BHEVAP_API void bhevap_run_free(bhevap_run* run);
BHEVAP_API size_t bhevap_run_emission_count(const bhevap_run* run);
BHEVAP_API int bhevap_run_energy_at(const bhevap_run* run, size_t i,
                                    double* out);
BHEVAP_API int bhevap_run_remaining_after_at(const bhevap_run* run, size_t i,
                                             double* out);
BHEVAP_API int bhevap_run_self_info_at(const bhevap_run* run, size_t i,
                                       double* out);
BHEVAP_API int bhevap_run_is_exhaustive(const bhevap_run* run);
BHEVAP_API int bhevap_run_ledger_total(const bhevap_run* run, double* out);
BHEVAP_API int bhevap_run_conservation(const bhevap_run* run,
                                       bhevap_conservation_report* out);
BHEVAP_API double bhevap_run_wall_seconds(const bhevap_run* run);

BHEVAP_API int bhevap_simulate_ensemble(const bhevap_sim_config* config,
                                        bhevap_ensemble** out);
BHEVAP_API void bhevap_ensemble_free(bhevap_ensemble* ensemble);
BHEVAP_API size_t bhevap_ensemble_size(const bhevap_ensemble* ensemble);
BHEVAP_API const bhevap_run* bhevap_ensemble_run_at(
    const bhevap_ensemble* ensemble, size_t i);
BHEVAP_API int bhevap_ensemble_get_stats(const bhevap_ensemble* ensemble,
                                         bhevap_ensemble_stats* out);

/* Kolmogorov-Smirnov sup distance between samples and the model CDF. */
BHEVAP_API int bhevap_ks_statistic(const double* samples, size_t count,
                                   const bhevap_spectrum* model, double* out);

/* ---- verification suites ----
 *
 * suite: "identities", "spectrum", "sampling" or "all". One line per check is
 * delivered through the callback. sampler_bias distorts the sampling suite's
 * uniform variates (testing hook; pass 0 for the real sampler). On return,
 * *checks_failed holds the number of failed checks.
 */
typedef void (*bhevap_report_cb)(const char* line, void* user_data);

BHEVAP_API int bhevap_verify(const char* suite, uint64_t seed,
                             double sampler_bias, bhevap_report_cb cb,
                             void* user_data, int* checks_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BHEVAP_H */
