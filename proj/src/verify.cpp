// SPDX-License-Identifier: Apache-2.0
#include "bhevap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bhevap/accum.hpp"
#include "bhevap/core.hpp"
#include "bhevap/dawson.hpp"
#include "bhevap/ledger.hpp"
#include "bhevap/montecarlo.hpp"
#include "bhevap/quadrature.hpp"
#include "bhevap/rng.hpp"
#include "bhevap/spectrum.hpp"

namespace bhevap::verify {

namespace {

std::string format_detail(const char* fmt, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

CheckResult make_result(std::string name, double worst, double tol,
                        std::string detail) {
    return CheckResult{std::move(name), worst <= tol, worst, tol,
                       std::move(detail)};
}

double rel_dev(double value, double reference) {
    if (reference == 0.0) return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

// log-uniform mass in [0.1, 100]
double draw_mass(RngStream& rng) {
    return 0.1 * std::pow(1000.0, rng.next_open01());
}

// Joint log probability evaluated in extended precision; independent route
// for Bayes-ratio cross checks (plain double subtraction of two joints loses
// the digits the identity lives in).
long double joint_ld(double mass, const std::vector<double>& energies) {
    long double s = 0.0L;
    for (double e : energies) s += static_cast<long double>(e);
    const long double m = mass;
    const long double pi8 = 8.0L * 3.14159265358979323846264338327950288L;
    return -pi8 * s * (m - 0.5L * s);
}

CheckResult markov_identity_check(std::uint64_t seed, std::size_t trials) {
    RngStream rng(seed, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double mass = draw_mass(rng);
        const double e1 = mass * (1e-4 + 0.33 * rng.next_open01());
        const double e2 = mass * (1e-4 + 0.33 * rng.next_open01());
        const double e3 = mass * (1e-4 + 0.33 * rng.next_open01());
        const BlackHoleState state(mass);
        const double mv = markov_violation(state, e1, e2, e3);
        worst = std::max(worst, rel_dev(mv, pair_correlation(e1, e3)));
    }
    return make_result("markov-violation-identity", worst, 1e-12,
                       format_detail("max rel dev %.3e over %.0f triples",
                                     worst, static_cast<double>(trials)));
}

CheckResult markov_invariance_check(std::uint64_t seed, std::size_t trials) {
    RngStream rng(seed, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double mass = draw_mass(rng);
        const double e1 = mass * (1e-4 + 0.2 * rng.next_open01());
        const double e2 = mass * (1e-4 + 0.2 * rng.next_open01());
        const double e3 = mass * (1e-4 + 0.2 * rng.next_open01());
        const double e2_alt = mass * (1e-4 + 0.2 * rng.next_open01());
        const double mass_alt = mass * (1.5 + 2.0 * rng.next_open01());
        const double base =
            markov_violation(BlackHoleState(mass), e1, e2, e3);
        const double moved =
            markov_violation(BlackHoleState(mass_alt), e1, e2_alt, e3);
        worst = std::max(worst, rel_dev(moved, base));
    }
    return make_result("markov-violation-invariance", worst, 1e-12,
                       format_detail("max rel change %.3e under E2/M shifts"
                                     " over %.0f trials",
                                     worst, static_cast<double>(trials)));
}

CheckResult correlation_identity_check(std::uint64_t seed,
                                       std::size_t trials) {
    RngStream rng(seed, 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double mass = draw_mass(rng);
        const double e1 = mass * (1e-4 + 0.45 * rng.next_open01());
        const double e2 = mass * (1e-4 + 0.45 * rng.next_open01());
        const double expected = pair_correlation(e1, e2);
        const double at_m =
            pair_correlation_log_form(BlackHoleState(mass), e1, e2);
        const double at_5m =
            pair_correlation_log_form(BlackHoleState(5.0 * mass), e1, e2);
        worst = std::max({worst, rel_dev(at_m, expected),
                          rel_dev(at_5m, expected)});
    }
    return make_result("pair-correlation-identity", worst, 1e-12,
                       format_detail("max rel dev %.3e over %.0f pairs",
                                     worst, static_cast<double>(trials)));
}

CheckResult conditional_bayes_check(std::uint64_t seed, std::size_t trials) {
    RngStream rng(seed, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double mass = draw_mass(rng);
        const std::size_t len = 1 + static_cast<std::size_t>(
                                        rng.next_open01() * 20.0);
        std::vector<double> history;
        double budget = 0.9;
        for (std::size_t k = 0; k < len; ++k) {
            const double f = budget * rng.next_open01() / 2.0;
            history.push_back(mass * std::max(f, 1e-6));
            budget -= f;
        }
        const double e = mass * std::max(budget * rng.next_open01(), 1e-6);
        const BlackHoleState state(mass);
        const double closed =
            conditional_log_prob(state, history, e).log_value;
        std::vector<double> with = history;
        with.push_back(e);
        const double bayes = static_cast<double>(joint_ld(mass, with) -
                                                 joint_ld(mass, history));
        worst = std::max(worst, rel_dev(closed, bayes));
    }
    return make_result("conditional-bayes-agreement", worst, 1e-12,
                       format_detail("max rel dev %.3e over %.0f histories",
                                     worst, static_cast<double>(trials)));
}

CheckResult joint_invariance_check(std::uint64_t seed, std::size_t trials) {
    RngStream rng(seed, 5);
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double mass = draw_mass(rng);
        const double total = mass * (0.05 + 0.85 * rng.next_open01());
        const std::size_t parts =
            2 + static_cast<std::size_t>(rng.next_open01() * 18.0);
        std::vector<double> cuts{0.0, total};
        for (std::size_t k = 0; k + 2 < parts + 1; ++k)
            cuts.push_back(total * rng.next_open01());
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> energies;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            energies.push_back(cuts[k + 1] - cuts[k]);
        const BlackHoleState state(mass);
        const double expected = delta_s(state, total).log_value;
        const double joint = joint_log_prob(state, energies).log_value;
        std::reverse(energies.begin(), energies.end());
        const double permuted = joint_log_prob(state, energies).log_value;
        worst = std::max({worst, rel_dev(joint, expected),
                          rel_dev(permuted, expected)});
    }
    return make_result("joint-partition-invariance", worst, 1e-12,
                       format_detail("max rel dev %.3e over %.0f partitions",
                                     worst, static_cast<double>(trials)));
}

CheckResult conservation_check(std::uint64_t seed, std::size_t trials) {
    RngStream rng(seed, 6);
    const double masses[] = {0.5, 1.0, 2.0, 10.0};
    double worst = 0.0;
    const std::size_t partitions = std::max<std::size_t>(trials / 50, 8);
    for (std::size_t i = 0; i < partitions; ++i) {
        const double mass = masses[i % 4];
        const std::size_t len = 1 + static_cast<std::size_t>(std::pow(
                                        10.0, 4.0 * rng.next_open01()));
        std::vector<double> gaps(len);
        double gap_sum = 0.0;
        for (double& g : gaps) {
            g = -std::log(rng.next_open01());
            gap_sum += g;
        }
        std::vector<double> energies;
        energies.reserve(len);
        DoubleDouble acc = dd_from(0.0);
        const double floor = 1e-14 * mass;
        for (std::size_t k = 0; k + 1 < len; ++k) {
            const double e = std::max(gaps[k] / gap_sum * mass, floor);
            energies.push_back(e);
            acc = dd_add(acc, e);
        }
        const double last = dd_sub(dd_from(mass), acc).to_double();
        if (last > floor)
            energies.push_back(last);
        else if (!energies.empty())
            energies.back() += last;
        const EntropyLedger ledger(mass, energies);
        const ConservationReport report = ledger.verify_conservation();
        if (report.is_exhausting)
            worst = std::max(worst, report.relative_residual);
    }
    return make_result(
        "pathwise-entropy-conservation", worst, 1e-12,
        format_detail("max rel residual %.3e over %.0f random partitions",
                      worst, static_cast<double>(partitions)));
}

} // namespace

std::vector<CheckResult> identity_checks(std::uint64_t seed,
                                         std::size_t trials) {
    return {markov_identity_check(seed, trials),
            markov_invariance_check(seed, trials),
            correlation_identity_check(seed, trials),
            conditional_bayes_check(seed, trials),
            joint_invariance_check(seed, trials),
            conservation_check(seed, trials)};
}

namespace {

constexpr double kOracleMasses[] = {0.01, 0.1, 1.0, 5.0, 10.0, 30.0};

CheckResult dawson_oracle_check() {
    double worst = 0.0;
    for (double x = 0.0; x <= 50.0; x += 0.25)
        worst = std::max(worst,
                         std::abs(dawson(x) - quadrature::dawson(x)));
    return make_result("dawson-quadrature-agreement", worst, 1e-13,
                       format_detail("max abs dev %.3e on [0, %.0f]", worst,
                                     50.0));
}

CheckResult normalizer_oracle_check() {
    double worst = 0.0;
    for (double m : kOracleMasses) {
        const SpectrumModel model(m);
        const double dev = std::abs(std::expm1(model.log_normalizer() -
                                               quadrature::log_normalizer(m)));
        worst = std::max(worst, dev);
    }
    return make_result("normalizer-quadrature-agreement", worst, 1e-10,
                       format_detail("max rel dev %.3e over %.0f masses",
                                     worst, 6.0));
}

CheckResult cdf_oracle_check() {
    double worst = 0.0;
    for (double m : kOracleMasses) {
        const SpectrumModel model(m);
        const double log_z = quadrature::log_normalizer(m);
        for (int i = 1; i < 20; ++i) {
            const double e = m * i / 20.0;
            const double oracle =
                std::exp(quadrature::tunneling_log_integral(m, 0.0, e) -
                         log_z);
            worst = std::max(worst, std::abs(model.cdf(e) - oracle));
        }
    }
    return make_result("cdf-quadrature-agreement", worst, 1e-9,
                       format_detail("max abs dev %.3e on %.0f-point grids",
                                     worst, 19.0));
}

CheckResult mean_oracle_check() {
    double worst = 0.0;
    for (double m : kOracleMasses) {
        const SpectrumModel model(m);
        worst = std::max(
            worst, rel_dev(model.mean_energy(), quadrature::moment(m, 1)));
    }
    return make_result("mean-quadrature-agreement", worst, 1e-10,
                       format_detail("max rel dev %.3e over %.0f masses",
                                     worst, 6.0));
}

CheckResult normalization_check() {
    double worst = 0.0;
    for (double m : kOracleMasses) {
        const SpectrumModel model(m);
        const double integral = std::exp(quadrature::log_normalizer(m) -
                                         model.log_normalizer());
        worst = std::max(worst, std::abs(integral - 1.0));
    }
    return make_result("density-normalization", worst, 1e-10,
                       format_detail("max |int p - 1| = %.3e over %.0f masses",
                                     worst, 6.0));
}

CheckResult roundtrip_check() {
    double worst = 0.0;
    for (double m : {1.0, 10.0}) {
        const SpectrumModel model(m);
        for (int i = 1; i < 1000; ++i) {
            const double u = i / 1000.0;
            worst = std::max(worst,
                             std::abs(model.cdf(model.quantile(u)) - u));
        }
    }
    return make_result("cdf-quantile-roundtrip", worst, 1e-9,
                       format_detail("max |cdf(quantile(u)) - u| = %.3e on "
                                     "%.0f-point grid",
                                     worst, 999.0));
}

CheckResult hawking_asymptotics_check() {
    double worst_margin = -1.0; // worst (deviation - bound), <= 0 passes
    double worst_dev = 0.0;
    for (double m : {5.0, 10.0, 30.0}) {
        const SpectrumModel model(m);
        const double dev = std::abs(model.mean_energy() * kEightPi * m - 1.0);
        const double margin = dev - 1.0 / (m * m);
        if (margin > worst_margin) {
            worst_margin = margin;
            worst_dev = dev;
        }
    }
    return make_result("hawking-temperature-asymptotics", worst_margin, 0.0,
                       format_detail("worst |8 pi m <E> - 1| = %.3e "
                                     "(slack to 1/m^2 bound: %.3e)",
                                     worst_dev, -worst_margin));
}

} // namespace

std::vector<CheckResult> spectrum_checks() {
    return {dawson_oracle_check(),  normalizer_oracle_check(),
            cdf_oracle_check(),     mean_oracle_check(),
            normalization_check(),  roundtrip_check(),
            hawking_asymptotics_check()};
}

namespace {

// Sampling-suite uniforms, optionally distorted to u^(1+bias) so that a
// deliberately broken sampler trips the suite.
double biased_uniform(RngStream& rng, double bias) {
    const double u = rng.next_open01();
    return bias == 0.0 ? u : std::pow(u, 1.0 + bias);
}

CheckResult ks_check(double m, std::uint64_t seed, double bias) {
    const SpectrumModel model(m);
    std::vector<double> samples;
    const std::size_t n = 10'000;
    samples.reserve(n);
    RngStream rng(seed, 7);
    for (std::size_t i = 0; i < n; ++i)
        samples.push_back(model.quantile(biased_uniform(rng, bias)));
    const double stat = ks_statistic(samples, model);
    char name[64];
    std::snprintf(name, sizeof(name), "ks-distance-m%g", m);
    return make_result(name, stat, 0.02,
                       format_detail("KS = %.4f at N = %.0f", stat,
                                     static_cast<double>(n)));
}

CheckResult first_emission_mean_check(std::uint64_t seed, double bias) {
    const double m = 10.0;
    const SpectrumModel model(m);
    const std::size_t n = 100'000;
    RngStream rng(seed, 8);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += model.quantile(biased_uniform(rng, bias));
    const double sample_mean = sum / static_cast<double>(n);
    const double mean = quadrature::moment(m, 1);
    const double var = quadrature::moment(m, 2) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(n));
    const double dev = std::abs(sample_mean - mean);
    return make_result("first-emission-mean", dev, 3.0 * se,
                       format_detail("|mean - %.6e| = %.3e", mean, dev));
}

CheckResult reproducibility_check(std::uint64_t seed) {
    SimulationConfig config;
    config.initial_mass = 2.0;
    config.cutoff_mass = 2e-6;
    config.seed = seed;
    const RunResult a = simulate_evaporation(config, 0);
    const RunResult b = simulate_evaporation(config, 0);
    const bool equal = a.sequence.energies() == b.sequence.energies();
    return CheckResult{
        "stream-reproducibility", equal, equal ? 0.0 : 1.0, 0.0,
        format_detail("replayed run of %.0f emissions, %.0f mismatches",
                      static_cast<double>(a.emission_count()),
                      equal ? 0.0 : 1.0)};
}

CheckResult sampled_conservation_check(std::uint64_t seed) {
    double worst = 0.0;
    for (double mass : {2.0, 10.0}) {
        SimulationConfig config;
        config.initial_mass = mass;
        config.cutoff_mass = 1e-6 * mass;
        config.runs = 10;
        config.seed = seed;
        for (const RunResult& run : run_ensemble(config)) {
            const ConservationReport report =
                run.ledger.verify_conservation();
            if (report.is_exhausting)
                worst = std::max(worst, report.relative_residual);
        }
    }
    return make_result("sampled-path-conservation", worst, 1e-12,
                       format_detail("max rel residual %.3e over %.0f runs",
                                     worst, 20.0));
}

} // namespace

std::vector<CheckResult> sampling_checks(std::uint64_t seed,
                                         double sampler_bias) {
    std::vector<CheckResult> results;
    results.push_back(ks_check(1.0, seed, sampler_bias));
    results.push_back(ks_check(10.0, seed, sampler_bias));
    results.push_back(first_emission_mean_check(seed, sampler_bias));
    results.push_back(reproducibility_check(seed));
    results.push_back(sampled_conservation_check(seed));
    return results;
}

std::vector<CheckResult> all_checks(std::uint64_t seed, double sampler_bias) {
    std::vector<CheckResult> results = identity_checks(seed, 10'000);
    for (auto& r : spectrum_checks()) results.push_back(std::move(r));
    for (auto& r : sampling_checks(seed, sampler_bias))
        results.push_back(std::move(r));
    return results;
}

} // namespace bhevap::verify
