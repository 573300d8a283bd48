// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one numbered check per release criterion, each printed
// as a PASS/FAIL line with its worst observed deviation and pinned
// tolerance. Exit code 0 only when every criterion holds.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bhevap/accum.hpp"
#include "bhevap/core.hpp"
#include "bhevap/dawson.hpp"
#include "bhevap/ledger.hpp"
#include "bhevap/montecarlo.hpp"
#include "bhevap/quadrature.hpp"
#include "bhevap/rng.hpp"
#include "bhevap/spectrum.hpp"

using namespace bhevap;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kAcceptanceSeed = 42;

int g_failures = 0;

void report(int criterion, const char* name, bool passed, double worst,
            double tolerance, const std::string& detail) {
    std::printf("[%d] %s %-34s worst=%.3e tol=%.3e  %s\n", criterion,
                passed ? "PASS" : "FAIL", name, worst, tolerance,
                detail.c_str());
    if (!passed) ++g_failures;
}

double rel_dev(double value, double reference) {
    if (reference == 0.0) return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

// Positive partition of `mass` whose floating-point sum lands on the mass.
std::vector<double> random_partition(double mass, std::size_t parts,
                                     RngStream& rng) {
    std::vector<double> gaps(parts);
    double gap_sum = 0.0;
    for (double& g : gaps) {
        g = -std::log(rng.next_open01());
        gap_sum += g;
    }
    std::vector<double> energies;
    energies.reserve(parts);
    DoubleDouble acc = dd_from(0.0);
    const double floor = 1e-14 * mass;
    for (std::size_t k = 0; k + 1 < parts; ++k) {
        const double e = std::max(gaps[k] / gap_sum * mass, floor);
        energies.push_back(e);
        acc = dd_add(acc, e);
    }
    const double last = dd_sub(dd_from(mass), acc).to_double();
    if (last > floor)
        energies.push_back(last);
    else
        energies.back() += last;
    return energies;
}

// Bayes-ratio Markov violation from four extended-precision joints.
long double markov_from_joints_ld(double m, double e1, double e2, double e3) {
    constexpr long double kPiLd = 3.14159265358979323846264338327950288L;
    auto joint = [&](long double s) {
        return -8.0L * kPiLd * s * (static_cast<long double>(m) - 0.5L * s);
    };
    const long double l1 = e1, l2 = e2, l3 = e3;
    return (joint(l1 + l2 + l3) - joint(l1 + l2)) -
           (joint(l2 + l3) - joint(l2));
}

// 1. Pathwise Bekenstein-Hawking conservation over random partitions.
void criterion_1() {
    RngStream rng(kAcceptanceSeed, 101);
    const double masses[] = {0.5, 1.0, 2.0, 10.0};
    double worst = 0.0;
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const double mass = masses[i % 4];
        const std::size_t parts = 1 + static_cast<std::size_t>(std::pow(
                                          10.0, 4.0 * rng.next_open01()));
        const EntropyLedger ledger(mass, random_partition(mass, parts, rng));
        const ConservationReport report = ledger.verify_conservation();
        if (!report.is_exhausting) continue;
        worst = std::max(worst, report.relative_residual);
        ++checked;
    }
    std::ostringstream detail;
    detail << checked << "/1000 exhausting partitions, lengths up to 1e4, "
           << "M in {0.5, 1, 2, 10}";
    report(1, "pathwise-conservation", checked == 1000 && worst <= 1e-12,
           worst, 1e-12, detail.str());
}

// 2. Non-Markovianity identity, invariance under E2/M, and agreement with
//    the literal Bayes-ratio route.
void criterion_2() {
    RngStream rng(kAcceptanceSeed, 102);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
        const double m = 0.1 * std::pow(1000.0, rng.next_open01());
        const double e1 = m * (1e-4 + 0.33 * rng.next_open01());
        const double e2 = m * (1e-4 + 0.33 * rng.next_open01());
        const double e3 = m * (1e-4 + 0.33 * rng.next_open01());
        const double expected = pair_correlation(e1, e3);
        const double mv = markov_violation(BlackHoleState(m), e1, e2, e3);
        worst = std::max(worst, rel_dev(mv, expected));
        // perturbing E2 and M leaves the value unchanged
        const double e2_alt = m * (1e-4 + 0.33 * rng.next_open01());
        const double m_alt = m * (1.2 + 3.0 * rng.next_open01());
        const double mv_alt =
            markov_violation(BlackHoleState(m_alt), e1, e2_alt, e3);
        worst = std::max(worst, rel_dev(mv_alt, expected));
        // literal Bayes ratio of joints, evaluated in extended precision
        const double bayes =
            static_cast<double>(markov_from_joints_ld(m, e1, e2, e3));
        worst = std::max(worst, rel_dev(bayes, expected));
    }
    report(2, "markov-violation-identity", worst <= 1e-12, worst, 1e-12,
           "10000 random (M, E1, E2, E3) with E2/M perturbation");
}

// 3. Correlation identity: three-term log combination vs 8 pi E1 E2.
void criterion_3() {
    RngStream rng(kAcceptanceSeed, 103);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
        const double m = 0.1 * std::pow(1000.0, rng.next_open01());
        const double e1 = m * (1e-4 + 0.45 * rng.next_open01());
        const double e2 = m * (1e-4 + 0.45 * rng.next_open01());
        const double expected = pair_correlation(e1, e2);
        worst = std::max(
            worst, rel_dev(pair_correlation_log_form(BlackHoleState(m), e1,
                                                     e2),
                           expected));
        worst = std::max(
            worst,
            rel_dev(pair_correlation_log_form(BlackHoleState(3.7 * m), e1,
                                              e2),
                    expected));
    }
    report(3, "pair-correlation-identity", worst <= 1e-12, worst, 1e-12,
           "10000 random pairs, each at two masses");
}

// 4. Joint-probability partition invariance.
void criterion_4() {
    RngStream rng(kAcceptanceSeed, 104);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) {
        const double m = 0.1 * std::pow(1000.0, rng.next_open01());
        const double total = m * (0.05 + 0.9 * rng.next_open01());
        const int parts = 2 + static_cast<int>(rng.next_open01() * 18);
        std::vector<double> cuts{0.0, total};
        for (int k = 0; k < parts - 1; ++k)
            cuts.push_back(total * rng.next_open01());
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> energies;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            energies.push_back(cuts[k + 1] - cuts[k]);
        const BlackHoleState state(m);
        const double expected = delta_s(state, total).log_value;
        worst = std::max(
            worst, rel_dev(joint_log_prob(state, energies).log_value,
                           expected));
        std::reverse(energies.begin(), energies.end());
        worst = std::max(
            worst, rel_dev(joint_log_prob(state, energies).log_value,
                           expected));
    }
    report(4, "joint-partition-invariance", worst <= 1e-12, worst, 1e-12,
           "10000 random re-partitions and permutations");
}

// 5. Spectrum numerics against the adaptive-quadrature oracle.
void criterion_5() {
    const double masses[] = {0.01, 0.1, 1.0, 5.0, 10.0, 30.0};

    double worst_dawson = 0.0;
    for (double x = 0.0; x <= 50.0; x += 0.05)
        worst_dawson = std::max(worst_dawson,
                                std::abs(dawson(x) - quadrature::dawson(x)));

    double worst_norm = 0.0, worst_cdf = 0.0, worst_mean = 0.0;
    for (double m : masses) {
        const SpectrumModel model(m);
        worst_norm = std::max(
            worst_norm, std::abs(std::expm1(model.log_normalizer() -
                                            quadrature::log_normalizer(m))));
        worst_mean = std::max(
            worst_mean, rel_dev(model.mean_energy(), quadrature::moment(m, 1)));
        const double log_z = quadrature::log_normalizer(m);
        for (int i = 1; i < 20; ++i) {
            const double e = m * i / 20.0;
            const double oracle = std::exp(
                quadrature::tunneling_log_integral(m, 0.0, e) - log_z);
            worst_cdf = std::max(worst_cdf, std::abs(model.cdf(e) - oracle));
        }
    }

    const bool passed = worst_dawson <= 1e-13 && worst_norm <= 1e-10 &&
                        worst_cdf <= 1e-9 && worst_mean <= 1e-10;
    std::ostringstream detail;
    detail << "dawson " << worst_dawson << " (tol 1e-13), normalizer "
           << worst_norm << " (1e-10), cdf " << worst_cdf << " (1e-9), mean "
           << worst_mean << " (1e-10)";
    report(5, "spectrum-vs-quadrature", passed,
           std::max({worst_dawson, worst_norm, worst_cdf, worst_mean}), 1e-9,
           detail.str());
}

// 6. Hawking-temperature asymptotics of the mean emission energy.
void criterion_6() {
    double worst_margin = -1.0;
    double worst_dev = 0.0;
    for (double m : {5.0, 10.0, 30.0}) {
        const double dev =
            std::abs(SpectrumModel(m).mean_energy() * kEightPi * m - 1.0);
        if (dev - 1.0 / (m * m) > worst_margin) {
            worst_margin = dev - 1.0 / (m * m);
            worst_dev = dev;
        }
    }
    std::ostringstream detail;
    detail << "worst |8 pi m <E> - 1| = " << worst_dev
           << " against the 1/m^2 band, m in {5, 10, 30}";
    report(6, "hawking-asymptotics", worst_margin <= 0.0, worst_dev, 0.04,
           detail.str());
}

// 7. Sampler fidelity: KS distance and first-emission mean.
void criterion_7() {
    double worst_ks = 0.0;
    for (double m : {1.0, 10.0}) {
        const SpectrumModel model(m);
        RngStream rng(kAcceptanceSeed, 107);
        std::vector<double> samples;
        samples.reserve(10'000);
        for (int i = 0; i < 10'000; ++i)
            samples.push_back(model.quantile(rng.next_open01()));
        worst_ks = std::max(worst_ks, ks_statistic(samples, model));
    }

    const SpectrumModel ten(10.0);
    RngStream rng(kAcceptanceSeed, 108);
    double sum = 0.0;
    const std::size_t n = 100'000;
    for (std::size_t i = 0; i < n; ++i)
        sum += ten.quantile(rng.next_open01());
    const double sample_mean = sum / static_cast<double>(n);
    const double mean = quadrature::moment(10.0, 1);
    const double sd =
        std::sqrt(quadrature::moment(10.0, 2) - mean * mean);
    const double dev = std::abs(sample_mean - mean);
    const double band = 3.0 * sd / std::sqrt(static_cast<double>(n));

    std::ostringstream detail;
    detail << "KS(N=1e4, m in {1,10}) = " << worst_ks
           << " (tol 0.02); first-emission |mean - " << mean << "| = " << dev
           << " (3 SE = " << band << ")";
    report(7, "sampler-fidelity", worst_ks <= 0.02 && dev <= band, worst_ks,
           0.02, detail.str());
}

// 8. Simulation scale: 100 exhaustive runs at M = 10, all conserving, with
//    the mean emission count within 10% of the renewal estimate
//    int dm / <E>(m). (That integral is the spec's own count oracle; its
//    value ~1269 at M = 10, cutoff = 1e-5.)
void criterion_8() {
    SimulationConfig config;
    config.initial_mass = 10.0;
    config.cutoff_mass = 1e-5; // 1e-6 * M
    config.runs = 100;
    config.seed = kAcceptanceSeed;

    const std::vector<RunResult> runs = run_ensemble(config);
    const EnsembleStats stats = ensemble_stats(runs);

    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double knots[] = {1e-5, 1e-4, 1e-3, 0.01, 0.1, 0.3, 1.0, 3.0, 10.0};
    double expected_count = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(knots); ++i)
        expected_count += GK::integrate(
            [](double m) { return 1.0 / SpectrumModel(m).mean_energy(); },
            knots[i], knots[i + 1], 10, 1e-10);

    const double count_dev = rel_dev(stats.count_mean, expected_count);
    const bool passed = stats.exhaustive_runs == 100 &&
                        stats.max_relative_residual <= 1e-12 &&
                        count_dev <= 0.10;
    std::ostringstream detail;
    detail << stats.exhaustive_runs
           << "/100 exhaustive, max residual " << stats.max_relative_residual
           << ", mean count " << stats.count_mean << " vs renewal estimate "
           << expected_count << " (dev " << count_dev * 100.0 << "%)";
    report(8, "simulation-scale", passed, count_dev, 0.10, detail.str());
}

// 9. Reproducibility: identical CLI invocations produce byte-identical
//    CSV and manifest outputs.
std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_9() {
    const fs::path dir =
        fs::temp_directory_path() /
        ("bhevap_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    auto invoke = [&](const std::string& tag) {
        const fs::path csv = dir / (tag + ".csv");
        const fs::path manifest = dir / (tag + ".json");
        const std::string command =
            std::string(BHEVAP_CLI_PATH) +
            " simulate --mass 2 --runs 3 --seed 7 --cutoff 1e-6 --output " +
            csv.string() + " --manifest " + manifest.string() + " > " +
            (dir / (tag + ".log")).string() + " 2>&1";
        const int status = std::system(command.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };

    const bool ran = invoke("a") && invoke("b");
    const bool csv_equal =
        ran && slurp(dir / "a.csv") == slurp(dir / "b.csv");
    const bool manifest_equal =
        ran && slurp(dir / "a.json") == slurp(dir / "b.json");
    const bool nonempty = ran && !slurp(dir / "a.csv").empty() &&
                          !slurp(dir / "a.json").empty();

    const bool passed = ran && csv_equal && manifest_equal && nonempty;
    std::ostringstream detail;
    detail << "two `simulate --mass 2 --runs 3 --seed 7` invocations: csv "
           << (csv_equal ? "identical" : "DIFFER") << ", manifest "
           << (manifest_equal ? "identical" : "DIFFER");
    report(9, "cli-reproducibility", passed, passed ? 0.0 : 1.0, 0.0,
           detail.str());
    fs::remove_all(dir);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    // criterion 8 also bounds the suite wall time
    const bool on_time = seconds < 60.0;
    std::printf("[8b] %s suite-wall-time                    %.1f s (budget 60 s)\n",
                on_time ? "PASS" : "FAIL", seconds);
    if (!on_time) ++g_failures;

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed in %.1f s\n", seconds);
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion/criteria FAILED\n", g_failures);
    return 1;
}
