// SPDX-License-Identifier: Apache-2.0
//
// bhevap command-line frontend: tabulate spectra, run evaporation ensembles,
// build entropy ledgers and run the verification suites. Talks to the core
// exclusively through the C API in bhevap/bhevap.h.
//
// Exit codes: 0 success, 1 verification/runtime failure, 2 I/O failure,
// 64 usage error, 65 domain error.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhevap/bhevap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;

constexpr double kLn2 = 0.69314718055994530942;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CliError{code, message};
}

// Checks a C API status; domain errors map to 65, everything else to 1.
void check(int rc, const char* context) {
    if (rc == BHEVAP_OK) return;
    const std::string detail = bhevap_last_error();
    const int code = rc == BHEVAP_ERR_DOMAIN ? kExitDomain : kExitFailure;
    fail(code, std::string(context) + ": " + detail);
}

// 17 significant digits: round-trip exact for double.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Timestamps are deterministic so that identical invocations produce byte
// identical manifests: SOURCE_DATE_EPOCH when set, otherwise the epoch.
std::string manifest_timestamp() {
    std::time_t t = 0;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Default outputs land in BHEVAP_OUTPUT_DIR when the flag was not given.
std::string resolve_output(const std::string& flag_value,
                           const std::string& default_name) {
    if (!flag_value.empty()) return flag_value;
    if (const char* dir = std::getenv("BHEVAP_OUTPUT_DIR")) {
        std::string path = dir;
        if (!path.empty() && path.back() != '/') path += '/';
        return path + default_name;
    }
    return default_name;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kExitIo, "cannot open output file: " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) fail(kExitIo, "failed writing output file: " + path);
}

// ---- spectrum ----

struct SpectrumArgs {
    double mass = 0.0;
    unsigned grid = 200;
    std::string output;
};

int cmd_spectrum(const SpectrumArgs& args) {
    bhevap_spectrum* model = nullptr;
    check(bhevap_spectrum_create(args.mass, &model), "spectrum");

    const std::string path = resolve_output(args.output, "spectrum.csv");
    std::ofstream out = open_output(path);
    out << "# normalized emission spectrum at mass " << fmt17(args.mass)
        << "; log_density and cdf are empty at energy=0 (support is (0, "
           "mass])\n";
    out << "energy,delta_s,log_density,cdf\n";
    const unsigned n = args.grid;
    for (unsigned i = 0; i < n; ++i) {
        const double e =
            (i == n - 1) ? args.mass : args.mass * i / (n - 1);
        double ds = 0.0;
        check(bhevap_delta_s(args.mass, e, &ds), "delta_s");
        out << fmt17(e) << ',' << fmt17(ds) << ',';
        if (i == 0) {
            out << ",";
        } else {
            double ld = 0.0, cd = 0.0;
            check(bhevap_spectrum_log_density(model, e, &ld), "log_density");
            check(bhevap_spectrum_cdf(model, e, &cd), "cdf");
            out << fmt17(ld) << ',' << fmt17(cd);
        }
        out << '\n';
    }
    finish_output(out, path);
    bhevap_spectrum_free(model);
    std::cout << "wrote " << path << " (" << n << " rows)\n";
    return kExitOk;
}

// ---- simulate ----

struct SimulateArgs {
    double mass = 0.0;
    double cutoff = -1.0; // default 1e-6 * mass
    std::uint64_t max_emissions = 10'000'000;
    std::uint64_t runs = 1;
    std::uint64_t seed = 0;
    std::string output;
    std::string manifest;
    std::string replay;
};

void load_replay(SimulateArgs& args) {
    std::ifstream in(args.replay, std::ios::binary);
    if (!in) fail(kExitIo, "cannot open manifest: " + args.replay);
    nlohmann::json doc;
    try {
        in >> doc;
        const auto& params = doc.at("parameters");
        args.mass = params.at("initial_mass").get<double>();
        args.cutoff = params.at("cutoff_mass").get<double>();
        args.max_emissions = params.at("max_emissions").get<std::uint64_t>();
        args.runs = params.at("runs").get<std::uint64_t>();
        args.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        fail(kExitDomain,
             std::string("manifest does not describe a run: ") + e.what());
    }
}

int cmd_simulate(SimulateArgs args) {
    if (!args.replay.empty()) load_replay(args);
    if (args.cutoff <= 0.0) args.cutoff = 1e-6 * args.mass;

    bhevap_sim_config config{};
    config.initial_mass = args.mass;
    config.cutoff_mass = args.cutoff;
    config.max_emissions = args.max_emissions;
    config.runs = args.runs;
    config.seed = args.seed;

    const std::string started = manifest_timestamp();
    bhevap_ensemble* ensemble = nullptr;
    check(bhevap_simulate_ensemble(&config, &ensemble), "simulate");

    const std::string csv_path = resolve_output(args.output, "simulation.csv");
    std::ofstream out = open_output(csv_path);
    out << "run_id,emission_index,energy,remaining_mass_after,"
           "conditional_self_info\n";
    const size_t runs = bhevap_ensemble_size(ensemble);
    for (size_t r = 0; r < runs; ++r) {
        const bhevap_run* run = bhevap_ensemble_run_at(ensemble, r);
        const size_t count = bhevap_run_emission_count(run);
        for (size_t i = 0; i < count; ++i) {
            double e = 0.0, rem = 0.0, info = 0.0;
            check(bhevap_run_energy_at(run, i, &e), "run energy");
            check(bhevap_run_remaining_after_at(run, i, &rem),
                  "run remaining");
            check(bhevap_run_self_info_at(run, i, &info), "run self info");
            out << r << ',' << (i + 1) << ',' << fmt17(e) << ',' << fmt17(rem)
                << ',' << fmt17(info) << '\n';
        }
    }
    finish_output(out, csv_path);

    bhevap_ensemble_stats stats{};
    check(bhevap_ensemble_get_stats(ensemble, &stats), "ensemble stats");

    nlohmann::ordered_json summary;
    summary["runs"] = stats.runs;
    summary["exhaustive_runs"] = stats.exhaustive_runs;
    summary["max_relative_residual"] = stats.max_relative_residual;
    summary["mean_emission_count"] = stats.count_mean;
    summary["emission_count_stddev"] = stats.count_stddev;
    summary["first_emission_mean"] = stats.first_emission_mean;
    nlohmann::ordered_json totals = nlohmann::ordered_json::array();
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (size_t r = 0; r < runs; ++r) {
        const bhevap_run* run = bhevap_ensemble_run_at(ensemble, r);
        double total = 0.0;
        check(bhevap_run_ledger_total(run, &total), "ledger total");
        totals.push_back(total);
        counts.push_back(bhevap_run_emission_count(run));
    }
    if (runs == 1) summary["ledger_total"] = totals[0];
    summary["per_run_ledger_totals"] = totals;
    summary["per_run_emission_counts"] = counts;

    nlohmann::ordered_json manifest;
    manifest["schema_version"] = "1";
    manifest["command"] = "simulate";
    manifest["code_version"] = bhevap_version();
    manifest["parameters"] = {{"initial_mass", args.mass},
                              {"cutoff_mass", args.cutoff},
                              {"max_emissions", args.max_emissions},
                              {"runs", args.runs}};
    manifest["seed"] = args.seed;
    manifest["started_at"] = started;
    manifest["finished_at"] = manifest_timestamp();
    manifest["summary"] = summary;

    const std::string manifest_path =
        resolve_output(args.manifest, "manifest.json");
    std::ofstream mout = open_output(manifest_path);
    mout << manifest.dump(2) << '\n';
    finish_output(mout, manifest_path);

    bhevap_ensemble_free(ensemble);

    std::cout << "wrote " << csv_path << " and " << manifest_path << " ("
              << stats.exhaustive_runs << "/" << stats.runs
              << " exhaustive runs)\n";
    const bool conserved = stats.exhaustive_runs == 0 ||
                           stats.max_relative_residual <= 1e-12;
    if (!conserved) {
        std::cerr << "conservation failure: max relative residual "
                  << fmt17(stats.max_relative_residual) << " exceeds 1e-12\n";
        return kExitFailure;
    }
    return kExitOk;
}

// ---- ledger ----

struct LedgerArgs {
    double mass = 0.0;
    std::string energies;
};

std::vector<double> parse_energy_list(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end == item.c_str() || *end != '\0')
            fail(kExitUsage, "cannot parse energy value: '" + item + "'");
        values.push_back(v);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return values;
}

int cmd_ledger(const LedgerArgs& args) {
    const std::vector<double> energies = parse_energy_list(args.energies);

    bhevap_ledger* ledger = nullptr;
    check(bhevap_ledger_build(args.mass, energies.data(), energies.size(),
                              &ledger),
          "ledger");

    std::printf("%5s %14s %14s %16s %16s\n", "index", "energy", "remaining",
                "self-info(nats)", "self-info(bits)");
    const size_t n = bhevap_ledger_size(ledger);
    for (size_t i = 0; i < n; ++i) {
        bhevap_ledger_entry entry{};
        check(bhevap_ledger_entry_at(ledger, i, &entry), "ledger entry");
        const double after = entry.remaining_mass_before - entry.energy;
        std::printf("%5" PRIu64 " %14s %14s %16s %16s\n", entry.index,
                    fmt9(entry.energy).c_str(), fmt9(after).c_str(),
                    fmt9(entry.conditional_self_info).c_str(),
                    fmt9(entry.conditional_self_info / kLn2).c_str());
    }
    bhevap_conservation_report report{};
    check(bhevap_ledger_verify(ledger, &report), "ledger verify");
    bhevap_ledger_free(ledger);

    std::printf("\ntotal        %s nats  (%s bits)\n",
                fmt9(report.total).c_str(),
                fmt9(report.total / kLn2).c_str());
    std::printf("target 4piM^2 %s nats\n", fmt9(report.target).c_str());
    std::printf("residual      %s\n",
                fmt9(report.total - report.target).c_str());
    std::printf("exhausting    %s", report.is_exhausting ? "yes" : "no");
    if (report.is_exhausting)
        std::printf("  (relative residual %s)",
                    fmt9(report.relative_residual).c_str());
    std::printf("\n");
    return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
    std::string suite_positional;
    std::string suite_flag;
    std::uint64_t seed = 42;
    double sampler_bias = 0.0;
};

int cmd_verify(const VerifyArgs& args) {
    std::string suite = "all";
    if (!args.suite_positional.empty()) suite = args.suite_positional;
    if (!args.suite_flag.empty()) suite = args.suite_flag;

    int failed = 0;
    auto print_line = [](const char* line, void*) {
        std::cout << line << '\n';
    };
    const int rc = bhevap_verify(suite.c_str(), args.seed, args.sampler_bias,
                                 print_line, nullptr, &failed);
    if (rc != BHEVAP_OK) {
        // unknown suite name is a usage error
        fail(kExitUsage, bhevap_last_error());
    }
    if (failed > 0) {
        std::cout << failed << " check(s) failed\n";
        return kExitFailure;
    }
    std::cout << "all checks passed\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"black-hole evaporation as tunneling: exact emission "
                 "probabilities, entropy ledger and spectrum sampler"};
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "tabulate the normalized emission spectrum as CSV");
    spectrum->add_option("--mass", spectrum_args.mass, "remaining mass")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum
        ->add_option("--grid", spectrum_args.grid,
                     "number of grid rows (inclusive of both endpoints)")
        ->check(CLI::Range(2u, 100'000'000u));
    spectrum->add_option("--output", spectrum_args.output,
                         "output CSV path (default spectrum.csv)");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "sample evaporation sequences and verify conservation");
    simulate->add_option("--mass", simulate_args.mass, "initial mass")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--cutoff", simulate_args.cutoff,
                         "cutoff mass (default 1e-6 * mass)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--max-emissions", simulate_args.max_emissions,
                         "emission cap per run");
    simulate->add_option("--runs", simulate_args.runs, "number of runs");
    simulate->add_option("--seed", simulate_args.seed, "RNG seed");
    simulate->add_option("--output", simulate_args.output,
                         "output CSV path (default simulation.csv)");
    simulate->add_option("--manifest", simulate_args.manifest,
                         "manifest JSON path (default manifest.json)");
    simulate->add_option("--replay", simulate_args.replay,
                         "re-run the configuration stored in a manifest");

    LedgerArgs ledger_args;
    CLI::App* ledger = app.add_subcommand(
        "ledger", "print the entropy ledger for an emission list");
    ledger->add_option("--mass", ledger_args.mass, "initial mass")
        ->required()
        ->check(CLI::PositiveNumber);
    ledger
        ->add_option("--energies", ledger_args.energies,
                     "comma-separated emission energies")
        ->required();

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the self-verification suites");
    const std::vector<std::string> suites{"identities", "spectrum", "sampling",
                                          "all"};
    verify->add_option("selector", verify_args.suite_positional,
                       "suite: identities|spectrum|sampling|all");
    verify->add_option("--suite", verify_args.suite_flag,
                       "suite: identities|spectrum|sampling|all");
    verify->add_option("--seed", verify_args.seed,
                       "seed for the randomized sweeps");
    verify
        ->add_option("--inject-sampler-bias", verify_args.sampler_bias,
                     "distort sampler uniforms (testing hook)")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
        if (simulate->parsed()) {
            if (simulate_args.replay.empty() && simulate_args.mass <= 0.0)
                fail(kExitUsage, "--mass is required unless --replay is given");
            return cmd_simulate(simulate_args);
        }
        if (ledger->parsed()) return cmd_ledger(ledger_args);
        if (verify->parsed()) {
            if (!verify_args.suite_positional.empty() &&
                std::find(suites.begin(), suites.end(),
                          verify_args.suite_positional) == suites.end())
                fail(kExitUsage,
                     "unknown suite: " + verify_args.suite_positional);
            if (!verify_args.suite_flag.empty() &&
                std::find(suites.begin(), suites.end(),
                          verify_args.suite_flag) == suites.end())
                fail(kExitUsage, "unknown suite: " + verify_args.suite_flag);
            return cmd_verify(verify_args);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
