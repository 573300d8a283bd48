// SPDX-License-Identifier: Apache-2.0
//
// Seedable sampling of evaporation sequences from the normalized spectrum,
// ensemble statistics, and goodness-of-fit helpers. Runs are independent
// (one RngStream per run keyed by stream id) and may execute concurrently;
// the ensemble result is identical however the runs are scheduled.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bhevap/core.hpp"
#include "bhevap/ledger.hpp"
#include "bhevap/rng.hpp"
#include "bhevap/spectrum.hpp"

namespace bhevap {

struct SimulationConfig {
    double initial_mass = 1.0;
    double cutoff_mass = 1e-6; // evaporation stops at this remaining mass
    std::uint64_t max_emissions = 10'000'000;
    std::uint64_t runs = 1;
    std::uint64_t seed = 0;

    void validate() const; // throws std::domain_error
};

struct RunResult {
    EmissionSequence sequence;
    EntropyLedger ledger;
    bool exhaustive; // final emission drained the hole exactly
    std::uint64_t stream_id;
    double wall_seconds;

    std::size_t emission_count() const { return sequence.size(); }
};

// One inverse-transform draw from the spectrum at remaining mass m.
double sample_emission(double remaining_mass, RngStream& rng);

// Samples at the shrinking remaining mass until it falls to or below the
// cutoff (then appends one final emission of exactly the remaining mass and
// marks the run exhaustive) or until max_emissions is reached (run left
// non-exhaustive, partial ledger attached).
RunResult simulate_evaporation(const SimulationConfig& config,
                               std::uint64_t stream_id);

// Runs config.runs simulations on stream ids 0..runs-1, possibly in
// parallel; the result vector is ordered by stream id.
std::vector<RunResult> run_ensemble(const SimulationConfig& config);

struct EnsembleStats {
    std::uint64_t runs;
    std::uint64_t exhaustive_runs;
    double count_mean;
    double count_stddev; // sample stddev; 0 for a single run
    double first_emission_mean;
    double max_relative_residual; // over exhaustive runs; NaN if none
    std::vector<double> ledger_totals;
    std::vector<std::uint64_t> emission_counts;
};

EnsembleStats ensemble_stats(std::span<const RunResult> results);

// Kolmogorov-Smirnov sup distance between the empirical CDF of the samples
// (all strictly inside (0, m)) and the model CDF.
double ks_statistic(std::span<const double> samples,
                    const SpectrumModel& model);

} // namespace bhevap
