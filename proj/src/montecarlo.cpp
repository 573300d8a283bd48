// SPDX-License-Identifier: Apache-2.0
#include "bhevap/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bhevap {

void SimulationConfig::validate() const {
    if (!std::isfinite(initial_mass) || initial_mass <= 0.0)
        throw std::domain_error("initial mass must be finite and positive");
    if (!std::isfinite(cutoff_mass) || cutoff_mass <= 0.0 ||
        cutoff_mass >= initial_mass)
        throw std::domain_error(
            "cutoff mass must satisfy 0 < cutoff < initial mass");
    if (max_emissions == 0)
        throw std::domain_error("max_emissions must be at least 1");
    if (runs == 0) throw std::domain_error("runs must be at least 1");
}

double sample_emission(double remaining_mass, RngStream& rng) {
    const SpectrumModel model(remaining_mass);
    return model.quantile(rng.next_open01());
}

RunResult simulate_evaporation(const SimulationConfig& config,
                               std::uint64_t stream_id) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    RngStream rng(config.seed, stream_id);
    std::vector<double> energies;
    const double mass = config.initial_mass;
    // The ledger rejects entries below 1e-15 * M as numerically degenerate,
    // so the sampler never emits less than that.
    const double floor = 1e-15 * mass;

    double remaining = mass;
    bool exhaustive = false;
    while (true) {
        if (remaining <= config.cutoff_mass) {
            // Final quantum carries exactly the remaining mass, enforcing
            // sum(E) == M. A residual below the ledger threshold is merged
            // into the previous emission instead of forming its own entry.
            if (remaining < floor && !energies.empty())
                energies.back() += remaining;
            else
                energies.push_back(remaining);
            exhaustive = true;
            break;
        }
        if (energies.size() >= config.max_emissions) break;
        const SpectrumModel model(remaining);
        double e;
        try {
            e = model.quantile(rng.next_open01());
        } catch (const std::runtime_error& err) {
            std::ostringstream msg;
            msg << err.what() << " (stream " << stream_id << ", emission "
                << energies.size() + 1 << ", remaining mass " << remaining
                << ")";
            throw std::runtime_error(msg.str());
        }
        if (e < floor) e = floor;
        energies.push_back(e);
        remaining -= e;
    }

    EmissionSequence sequence(mass, std::move(energies));
    EntropyLedger ledger(mass, sequence.energies());
    const auto t1 = std::chrono::steady_clock::now();
    return RunResult{std::move(sequence), std::move(ledger), exhaustive,
                     stream_id,
                     std::chrono::duration<double>(t1 - t0).count()};
}

std::vector<RunResult> run_ensemble(const SimulationConfig& config) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.runs);

    // Each slot depends only on its stream id, so the outcome is identical
    // however the runs are scheduled across threads.
    std::vector<std::optional<RunResult>> slots(n);
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers =
        n >= 4 ? std::min<unsigned>(hw == 0 ? 1 : hw, 8) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            slots[i].emplace(simulate_evaporation(config, i));
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers)
                        slots[i].emplace(simulate_evaporation(config, i));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    std::vector<RunResult> results;
    results.reserve(n);
    for (auto& slot : slots) results.push_back(std::move(*slot));
    return results;
}

EnsembleStats ensemble_stats(std::span<const RunResult> results) {
    if (results.empty())
        throw std::domain_error("ensemble statistics need at least one run");

    EnsembleStats stats{};
    stats.runs = results.size();
    stats.ledger_totals.reserve(results.size());
    stats.emission_counts.reserve(results.size());
    stats.max_relative_residual = std::numeric_limits<double>::quiet_NaN();

    double count_sum = 0.0;
    double first_sum = 0.0;
    for (const RunResult& run : results) {
        stats.ledger_totals.push_back(run.ledger.total());
        stats.emission_counts.push_back(run.emission_count());
        count_sum += static_cast<double>(run.emission_count());
        first_sum += run.sequence.energies().front();
        if (run.exhaustive) {
            ++stats.exhaustive_runs;
            const double residual =
                run.ledger.verify_conservation().relative_residual;
            if (std::isnan(stats.max_relative_residual) ||
                residual > stats.max_relative_residual)
                stats.max_relative_residual = residual;
        }
    }
    const double n = static_cast<double>(stats.runs);
    stats.count_mean = count_sum / n;
    stats.first_emission_mean = first_sum / n;

    if (stats.runs > 1) {
        double ss = 0.0;
        for (std::uint64_t c : stats.emission_counts) {
            const double d = static_cast<double>(c) - stats.count_mean;
            ss += d * d;
        }
        stats.count_stddev = std::sqrt(ss / (n - 1.0));
    }
    return stats;
}

double ks_statistic(std::span<const double> samples,
                    const SpectrumModel& model) {
    if (samples.empty())
        throw std::domain_error("KS statistic needs at least one sample");
    for (double s : samples) {
        if (!std::isfinite(s) || s <= 0.0 || s >= model.remaining_mass()) {
            std::ostringstream msg;
            msg << "sample " << s << " lies outside the support (0, "
                << model.remaining_mass() << ")";
            throw std::domain_error(msg.str());
        }
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = model.cdf(sorted[i]);
        const double below = f - static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n - f;
        sup = std::max({sup, below, above});
    }
    return sup;
}

} // namespace bhevap
