// SPDX-License-Identifier: Apache-2.0
//
// extern "C" surface over the C++ core. Exceptions never cross this boundary:
// every entry point traps them, stores the message in a thread-local slot and
// returns a status code.
#include "bhevap/bhevap.h"

#include <exception>
#include <memory>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhevap/core.hpp"
#include "bhevap/dawson.hpp"
#include "bhevap/ledger.hpp"
#include "bhevap/montecarlo.hpp"
#include "bhevap/rng.hpp"
#include "bhevap/spectrum.hpp"
#include "bhevap/verify.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown"; }

template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return BHEVAP_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return BHEVAP_ERR_DOMAIN;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return BHEVAP_ERR_CONVERGENCE;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return BHEVAP_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BHEVAP_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return BHEVAP_ERR_INTERNAL;
    }
}

int require(bool ok) {
    if (!ok) {
        set_error("null pointer or invalid handle");
        return BHEVAP_ERR_INVALID;
    }
    return BHEVAP_OK;
}

} // namespace

struct bhevap_ledger {
    bhevap::EntropyLedger impl;
};

struct bhevap_spectrum {
    bhevap::SpectrumModel impl;
};

struct bhevap_rng {
    bhevap::RngStream impl;
};

struct bhevap_run {
    bhevap::RunResult impl;
};

struct bhevap_ensemble {
    std::vector<bhevap_run> runs;
    bhevap::EnsembleStats stats;
};

extern "C" {

const char* bhevap_version(void) { return "0.1.0"; }

const char* bhevap_last_error(void) { return g_last_error.c_str(); }

int bhevap_delta_s(double mass, double energy, double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::delta_s(bhevap::BlackHoleState(mass), energy).log_value;
        return BHEVAP_OK;
    });
}

int bhevap_joint_log_prob(double mass, const double* energies, size_t count,
                          double* out) {
    if (int rc = require(out != nullptr && (count == 0 || energies)))
        return rc;
    return guarded([&] {
        *out = bhevap::joint_log_prob(bhevap::BlackHoleState(mass),
                                      std::span(energies, count))
                   .log_value;
        return BHEVAP_OK;
    });
}

int bhevap_conditional_log_prob(double mass, const double* history,
                                size_t count, double energy, double* out) {
    if (int rc = require(out != nullptr && (count == 0 || history)))
        return rc;
    return guarded([&] {
        *out = bhevap::conditional_log_prob(bhevap::BlackHoleState(mass),
                                            std::span(history, count), energy)
                   .log_value;
        return BHEVAP_OK;
    });
}

int bhevap_markov_violation(double mass, double e1, double e2, double e3,
                            double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::markov_violation(bhevap::BlackHoleState(mass), e1, e2,
                                        e3);
        return BHEVAP_OK;
    });
}

int bhevap_pair_correlation(double e1, double e2, double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::pair_correlation(e1, e2);
        return BHEVAP_OK;
    });
}

int bhevap_pair_correlation_log_form(double mass, double e1, double e2,
                                     double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::pair_correlation_log_form(bhevap::BlackHoleState(mass),
                                                 e1, e2);
        return BHEVAP_OK;
    });
}

int bhevap_bh_entropy(double mass, double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::BlackHoleState(mass).bh_entropy();
        return BHEVAP_OK;
    });
}

int bhevap_horizon_area(double mass, double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::BlackHoleState(mass).horizon_area();
        return BHEVAP_OK;
    });
}

int bhevap_ledger_build(double initial_mass, const double* energies,
                        size_t count, bhevap_ledger** out) {
    if (int rc = require(out != nullptr && (count == 0 || energies)))
        return rc;
    *out = nullptr;
    return guarded([&] {
        *out = new bhevap_ledger{
            bhevap::EntropyLedger(initial_mass, std::span(energies, count))};
        return BHEVAP_OK;
    });
}

void bhevap_ledger_free(bhevap_ledger* ledger) { delete ledger; }

size_t bhevap_ledger_size(const bhevap_ledger* ledger) {
    return ledger ? ledger->impl.entries().size() : 0;
}

int bhevap_ledger_entry_at(const bhevap_ledger* ledger, size_t i,
                           bhevap_ledger_entry* out) {
    if (int rc = require(ledger != nullptr && out != nullptr &&
                         i < ledger->impl.entries().size()))
        return rc;
    const bhevap::LedgerEntry& entry = ledger->impl.entries()[i];
    out->index = entry.index;
    out->energy = entry.energy;
    out->remaining_mass_before = entry.remaining_mass_before;
    out->conditional_self_info = entry.conditional_self_info;
    return BHEVAP_OK;
}

int bhevap_ledger_total(const bhevap_ledger* ledger, double* out) {
    if (int rc = require(ledger != nullptr && out != nullptr)) return rc;
    *out = ledger->impl.total();
    return BHEVAP_OK;
}

int bhevap_ledger_verify(const bhevap_ledger* ledger,
                         bhevap_conservation_report* out) {
    if (int rc = require(ledger != nullptr && out != nullptr)) return rc;
    const bhevap::ConservationReport report =
        ledger->impl.verify_conservation();
    out->is_exhausting = report.is_exhausting ? 1 : 0;
    out->total = report.total;
    out->target = report.target;
    out->relative_residual = report.relative_residual;
    return BHEVAP_OK;
}

int bhevap_partial_entropy(double initial_mass, const double* energies,
                           size_t count, double* out) {
    if (int rc = require(out != nullptr && (count == 0 || energies)))
        return rc;
    return guarded([&] {
        *out = bhevap::partial_entropy(initial_mass, std::span(energies, count));
        return BHEVAP_OK;
    });
}

int bhevap_dawson(double x, double* out) {
    if (int rc = require(out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::dawson(x);
        return BHEVAP_OK;
    });
}

int bhevap_spectrum_create(double remaining_mass, bhevap_spectrum** out) {
    if (int rc = require(out != nullptr)) return rc;
    *out = nullptr;
    return guarded([&] {
        *out = new bhevap_spectrum{bhevap::SpectrumModel(remaining_mass)};
        return BHEVAP_OK;
    });
}

void bhevap_spectrum_free(bhevap_spectrum* model) { delete model; }

int bhevap_spectrum_log_normalizer(const bhevap_spectrum* model, double* out) {
    if (int rc = require(model != nullptr && out != nullptr)) return rc;
    *out = model->impl.log_normalizer();
    return BHEVAP_OK;
}

int bhevap_spectrum_log_density(const bhevap_spectrum* model, double energy,
                                double* out) {
    if (int rc = require(model != nullptr && out != nullptr)) return rc;
    return guarded([&] {
        *out = model->impl.log_density(energy);
        return BHEVAP_OK;
    });
}

int bhevap_spectrum_cdf(const bhevap_spectrum* model, double energy,
                        double* out) {
    if (int rc = require(model != nullptr && out != nullptr)) return rc;
    return guarded([&] {
        *out = model->impl.cdf(energy);
        return BHEVAP_OK;
    });
}

int bhevap_spectrum_quantile(const bhevap_spectrum* model, double u,
                             double* out) {
    if (int rc = require(model != nullptr && out != nullptr)) return rc;
    return guarded([&] {
        *out = model->impl.quantile(u);
        return BHEVAP_OK;
    });
}

int bhevap_spectrum_mean_energy(const bhevap_spectrum* model, double* out) {
    if (int rc = require(model != nullptr && out != nullptr)) return rc;
    *out = model->impl.mean_energy();
    return BHEVAP_OK;
}

int bhevap_rng_create(uint64_t seed, uint64_t stream_id, bhevap_rng** out) {
    if (int rc = require(out != nullptr)) return rc;
    *out = nullptr;
    return guarded([&] {
        *out = new bhevap_rng{bhevap::RngStream(seed, stream_id)};
        return BHEVAP_OK;
    });
}

void bhevap_rng_free(bhevap_rng* rng) { delete rng; }

int bhevap_rng_next_open01(bhevap_rng* rng, double* out) {
    if (int rc = require(rng != nullptr && out != nullptr)) return rc;
    *out = rng->impl.next_open01();
    return BHEVAP_OK;
}

int bhevap_sample_emission(double remaining_mass, bhevap_rng* rng,
                           double* out) {
    if (int rc = require(rng != nullptr && out != nullptr)) return rc;
    return guarded([&] {
        *out = bhevap::sample_emission(remaining_mass, rng->impl);
        return BHEVAP_OK;
    });
}

namespace {

bhevap::SimulationConfig to_config(const bhevap_sim_config* config) {
    bhevap::SimulationConfig cfg;
    cfg.initial_mass = config->initial_mass;
    cfg.cutoff_mass = config->cutoff_mass;
    cfg.max_emissions = config->max_emissions;
    cfg.runs = config->runs;
    cfg.seed = config->seed;
    return cfg;
}

} // namespace

int bhevap_simulate_run(const bhevap_sim_config* config, uint64_t stream_id,
                        bhevap_run** out) {
    if (int rc = require(config != nullptr && out != nullptr)) return rc;
    *out = nullptr;
    return guarded([&] {
        *out = new bhevap_run{
            bhevap::simulate_evaporation(to_config(config), stream_id)};
        return BHEVAP_OK;
    });
}

void bhevap_run_free(bhevap_run* run) { delete run; }

size_t bhevap_run_emission_count(const bhevap_run* run) {
    return run ? run->impl.emission_count() : 0;
}

int bhevap_run_energy_at(const bhevap_run* run, size_t i, double* out) {
    if (int rc = require(run != nullptr && out != nullptr &&
                         i < run->impl.emission_count()))
        return rc;
    *out = run->impl.sequence.energies()[i];
    return BHEVAP_OK;
}

int bhevap_run_remaining_after_at(const bhevap_run* run, size_t i,
                                  double* out) {
    if (int rc = require(run != nullptr && out != nullptr &&
                         i < run->impl.emission_count()))
        return rc;
    *out = run->impl.sequence.remaining_masses()[i + 1];
    return BHEVAP_OK;
}

int bhevap_run_self_info_at(const bhevap_run* run, size_t i, double* out) {
    if (int rc = require(run != nullptr && out != nullptr &&
                         i < run->impl.emission_count()))
        return rc;
    *out = run->impl.ledger.entries()[i].conditional_self_info;
    return BHEVAP_OK;
}

int bhevap_run_is_exhaustive(const bhevap_run* run) {
    return run && run->impl.exhaustive ? 1 : 0;
}

int bhevap_run_ledger_total(const bhevap_run* run, double* out) {
    if (int rc = require(run != nullptr && out != nullptr)) return rc;
    *out = run->impl.ledger.total();
    return BHEVAP_OK;
}

int bhevap_run_conservation(const bhevap_run* run,
                            bhevap_conservation_report* out) {
    if (int rc = require(run != nullptr && out != nullptr)) return rc;
    const bhevap::ConservationReport report =
        run->impl.ledger.verify_conservation();
    out->is_exhausting = report.is_exhausting ? 1 : 0;
    out->total = report.total;
    out->target = report.target;
    out->relative_residual = report.relative_residual;
    return BHEVAP_OK;
}

double bhevap_run_wall_seconds(const bhevap_run* run) {
    return run ? run->impl.wall_seconds : 0.0;
}

int bhevap_simulate_ensemble(const bhevap_sim_config* config,
                             bhevap_ensemble** out) {
    if (int rc = require(config != nullptr && out != nullptr)) return rc;
    *out = nullptr;
    return guarded([&] {
        std::vector<bhevap::RunResult> results =
            bhevap::run_ensemble(to_config(config));
        auto ensemble = std::make_unique<bhevap_ensemble>();
        ensemble->stats = bhevap::ensemble_stats(results);
        ensemble->runs.reserve(results.size());
        for (auto& run : results)
            ensemble->runs.push_back(bhevap_run{std::move(run)});
        *out = ensemble.release();
        return BHEVAP_OK;
    });
}

void bhevap_ensemble_free(bhevap_ensemble* ensemble) { delete ensemble; }

size_t bhevap_ensemble_size(const bhevap_ensemble* ensemble) {
    return ensemble ? ensemble->runs.size() : 0;
}

const bhevap_run* bhevap_ensemble_run_at(const bhevap_ensemble* ensemble,
                                         size_t i) {
    if (!ensemble || i >= ensemble->runs.size()) return nullptr;
    return &ensemble->runs[i];
}

int bhevap_ensemble_get_stats(const bhevap_ensemble* ensemble,
                              bhevap_ensemble_stats* out) {
    if (int rc = require(ensemble != nullptr && out != nullptr)) return rc;
    out->runs = ensemble->stats.runs;
    out->exhaustive_runs = ensemble->stats.exhaustive_runs;
    out->count_mean = ensemble->stats.count_mean;
    out->count_stddev = ensemble->stats.count_stddev;
    out->first_emission_mean = ensemble->stats.first_emission_mean;
    out->max_relative_residual = ensemble->stats.max_relative_residual;
    return BHEVAP_OK;
}

int bhevap_ks_statistic(const double* samples, size_t count,
                        const bhevap_spectrum* model, double* out) {
    if (int rc = require(model != nullptr && out != nullptr &&
                         (count == 0 || samples)))
        return rc;
    return guarded([&] {
        *out = bhevap::ks_statistic(std::span(samples, count), model->impl);
        return BHEVAP_OK;
    });
}

int bhevap_verify(const char* suite, uint64_t seed, double sampler_bias,
                  bhevap_report_cb cb, void* user_data, int* checks_failed) {
    if (int rc = require(suite != nullptr && checks_failed != nullptr))
        return rc;
    return guarded([&] {
        std::vector<bhevap::verify::CheckResult> results;
        const std::string name(suite);
        if (name == "identities")
            results = bhevap::verify::identity_checks(seed, 10'000);
        else if (name == "spectrum")
            results = bhevap::verify::spectrum_checks();
        else if (name == "sampling")
            results = bhevap::verify::sampling_checks(seed, sampler_bias);
        else if (name == "all")
            results = bhevap::verify::all_checks(seed, sampler_bias);
        else
            throw std::invalid_argument("unknown verify suite: " + name);

        int failed = 0;
        for (const auto& r : results) {
            if (!r.passed) ++failed;
            if (cb) {
                std::string line = (r.passed ? "PASS " : "FAIL ") + r.name +
                                   "  " + r.detail;
                cb(line.c_str(), user_data);
            }
        }
        *checks_failed = failed;
        return BHEVAP_OK;
    });
}

} // extern "C"
