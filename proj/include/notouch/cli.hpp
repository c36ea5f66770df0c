// Copyright 2026 The notouch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOTOUCH_CLI_HPP
#define NOTOUCH_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 numerical or I/O failure
// (or a failed verify check), 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "notouch/circuit.hpp"
#include "notouch/golden_section.hpp"
#include "notouch/io.hpp"
#include "notouch/protocol.hpp"
#include "notouch/verify.hpp"

namespace notouch::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string command;
    int n = 0;
    std::optional<double> delta;
    std::optional<double> alpha;
    ParticleStatistics statistics = ParticleStatistics::Boson;
    /// Unset means "on for fermions, off for bosons".
    std::optional<bool> phase_correction;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> unitary_path;
    std::optional<std::uint64_t> g_seed;
    std::uint64_t seed = VerifyOptions{}.seed;

    bool effective_phase_correction() const {
        return phase_correction.value_or(statistics == ParticleStatistics::Fermion);
    }
};

namespace detail {

using io::format_number;

inline void emit(const RunConfig &cfg, const std::string &text, std::ostream &out) {
    if (!cfg.output_path) {
        out << text;
        return;
    }
    std::ofstream f(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open output file " + *cfg.output_path);
    f << text;
    f.flush();
    if (!f) throw std::ios_base::failure("failed writing output file " + *cfg.output_path);
}

// One-hot amplitudes equal to -1/sqrt(N) after the global phase is fixed.
inline int count_w_sign_mismatches(const PostSelectedState &s) {
    const double target = 1.0 / std::sqrt(static_cast<double>(s.n_qubits));
    int mismatches = 0;
    for (int q = 1; q <= s.n_qubits; ++q) {
        if (std::abs(s.amplitudes[one_hot_index(s.n_qubits, q)] + target) < kAmplitudeTolerance) ++mismatches;
    }
    return mismatches;
}

inline int cmd_simulate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    ProtocolParams params;
    params.n_qubits = cfg.n;
    params.delta = cfg.delta.value_or(optimal_delta(cfg.n));
    params.alpha = cfg.alpha;
    params.statistics = cfg.statistics;
    params.fermion_phase_correction = cfg.effective_phase_correction();
    params.validate();

    const GCompletion g = cfg.g_seed ? GCompletion::randomized(cfg.n, *cfg.g_seed) : GCompletion::gram_schmidt(cfg.n);
    const double alpha = params.alpha ? *params.alpha : balanced_alpha(params.n_qubits, params.delta);
    const PostSelectedState state = run_protocol(params, g);
    const double f = state.success_probability > 0.0 ? fidelity(state, w_state(cfg.n)) : 0.0;
    const int mismatches = count_w_sign_mismatches(state);

    if (cfg.unitary_path) {
        std::ofstream u(*cfg.unitary_path, std::ios::binary | std::ios::trunc);
        if (!u) throw std::ios_base::failure("cannot open unitary output file " + *cfg.unitary_path);
        u << io::unitary_json(build_protocol_unitary(params, g)).dump(2) << '\n';
        if (!u) throw std::ios_base::failure("failed writing unitary output file " + *cfg.unitary_path);
    }

    std::ostringstream text;
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j = io::state_json(state);
        j["statistics"] = std::string(to_string(cfg.statistics));
        j["delta"] = params.delta;
        j["alpha"] = alpha;
        j["phase_correction"] = params.fermion_phase_correction;
        j["fidelity_w"] = f;
        j["w_sign_mismatches"] = mismatches;
        text << j.dump(2) << '\n';
    } else {
        text << "# simulate N=" << cfg.n << " statistics=" << to_string(cfg.statistics)
             << " delta=" << format_number(params.delta) << " alpha=" << format_number(alpha)
             << " phase_correction=" << (params.fermion_phase_correction ? "on" : "off") << '\n';
        text << "bitstring,re,im,probability\n";
        for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
            const Complex a = state.amplitudes[i];
            text << coincidence_bits(i, cfg.n) << ',' << format_number(a.real()) << ',' << format_number(a.imag())
                 << ',' << format_number(std::norm(a)) << '\n';
        }
        text << "success_probability," << format_number(state.success_probability) << '\n';
        text << "fidelity_w," << format_number(f) << '\n';
        text << "w_sign_mismatches," << mismatches << '\n';
    }
    emit(cfg, text.str(), out);
    if (mismatches > 0) {
        err << "note: " << mismatches << " of " << cfg.n
            << " W components carry the opposite sign; fermions need the path-1 phase correction\n";
    }
    return 0;
}

inline int cmd_efficiency(const RunConfig &cfg, std::ostream &out) {
    const double delta = cfg.delta.value_or(optimal_delta(cfg.n));
    const double eff = efficiency_closed_form(cfg.n, delta);
    std::ostringstream text;
    if (cfg.format == OutputFormat::Json) {
        text << nlohmann::json{{"N", cfg.n}, {"delta", delta}, {"efficiency", eff}}.dump(2) << '\n';
    } else {
        text << "N,delta,efficiency\n" << cfg.n << ',' << format_number(delta) << ',' << format_number(eff) << '\n';
    }
    emit(cfg, text.str(), out);
    return 0;
}

inline int cmd_optimize(const RunConfig &cfg, std::ostream &out) {
    const auto row = efficiency_row(cfg.n);
    const double numeric = std::sqrt(golden_section_optimal_delta_squared(cfg.n).x);
    std::ostringstream text;
    if (cfg.format == OutputFormat::Json) {
        text << nlohmann::json{{"N", cfg.n},
                               {"delta_max", row.delta_max},
                               {"delta_max_squared", optimal_delta_squared(cfg.n)},
                               {"delta_golden_section", numeric},
                               {"eff_exact", row.eff_exact},
                               {"eff_asymptotic", row.eff_asymptotic},
                               {"eff_competitor_asymptotic", row.eff_competitor_asymptotic}}
                    .dump(2)
             << '\n';
    } else {
        text << "N,delta_max,delta_max_squared,delta_golden_section,eff_exact,eff_asymptotic,"
                "eff_competitor_asymptotic\n";
        text << cfg.n << ',' << format_number(row.delta_max) << ',' << format_number(optimal_delta_squared(cfg.n))
             << ',' << format_number(numeric) << ',' << format_number(row.eff_exact) << ','
             << format_number(row.eff_asymptotic) << ',' << format_number(row.eff_competitor_asymptotic) << '\n';
    }
    emit(cfg, text.str(), out);
    return 0;
}

inline int cmd_figure2(const RunConfig &cfg, std::ostream &out) {
    const EfficiencyCurve curve = efficiency_curve(cfg.n);
    const std::string text =
        cfg.format == OutputFormat::Json ? io::efficiency_json(curve).dump(2) + "\n" : io::efficiency_csv(curve);
    emit(cfg, text, out);
    return 0;
}

inline int cmd_verify(const RunConfig &cfg, std::ostream &out) {
    VerifyOptions opts;
    opts.n = cfg.n;
    opts.seed = cfg.seed;
    const VerifyReport report = run_verification(opts);
    std::ostringstream text;
    text << "# verify N=" << cfg.n << " seed=" << cfg.seed << '\n';
    print_report(report, text);
    text << (report.ok() ? "OK" : "FAILED") << '\n';
    emit(cfg, text.str(), out);
    return report.ok() ? 0 : 1;
}

}  // namespace detail

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation and analysis of the no-touching linear-optical W-state protocol", "notouch"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto n_range = CLI::Range(2, 1000);
    const auto unit = CLI::Range(0.0, 1.0);

    std::string format_name = "csv";
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("-o,--output", cfg.output_path, "Write the report to this file instead of stdout");
        sub->add_option("--format", format_name, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto *simulate = app.add_subcommand("simulate", "Simulate the circuit and post-select on coincidences");
    simulate->add_option("-n,--n", cfg.n, "Number of qubits")->required()->check(n_range);
    simulate->add_option("--delta", cfg.delta, "Reflectivity of the V splitters (default: optimal)")->check(unit);
    simulate->add_option("--alpha", cfg.alpha, "Override the balanced reflectivity of U")->check(unit);
    std::string stats_name = "boson";
    simulate->add_option("--statistics", stats_name, "Particle statistics: boson or fermion")
        ->check(CLI::IsMember({"boson", "fermion"}));
    simulate->add_flag("--phase-correction,!--no-phase-correction", cfg.phase_correction,
                       "Phase e^{i pi} on output path 1 (default: on for fermions)");
    simulate->add_option("--export-unitary", cfg.unitary_path, "Write the circuit matrix as JSON");
    simulate->add_option("--g-seed", cfg.g_seed, "Use a seeded random completion of G");
    add_common(simulate);

    auto *efficiency = app.add_subcommand("efficiency", "Closed-form success probability");
    efficiency->add_option("-n,--n", cfg.n, "Number of qubits")->required()->check(n_range);
    efficiency->add_option("--delta", cfg.delta, "Reflectivity of the V splitters (default: optimal)")->check(unit);
    add_common(efficiency);

    auto *optimize = app.add_subcommand("optimize", "Optimal delta and efficiency");
    optimize->add_option("-n,--n", cfg.n, "Number of qubits")->required()->check(n_range);
    add_common(optimize);

    auto *figure2 = app.add_subcommand("figure2", "Efficiency table for N = 2..n");
    figure2->add_option("-n,--n", cfg.n, "Largest number of qubits")->required()->check(n_range);
    add_common(figure2);

    auto *verify = app.add_subcommand("verify", "Run the cross-module self-check");
    cfg.n = 3;
    verify->add_option("-n,--n", cfg.n, "Number of qubits for the circuit checks")->capture_default_str()->check(n_range);
    verify->add_option("--seed", cfg.seed, "Seed for random unitaries and the random G completion")->capture_default_str();
    verify->add_option("-o,--output", cfg.output_path, "Write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.statistics = stats_name == "fermion" ? ParticleStatistics::Fermion : ParticleStatistics::Boson;
    cfg.format = format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;
    try {
        if (simulate->parsed()) return detail::cmd_simulate(cfg, out, err);
        if (efficiency->parsed()) return detail::cmd_efficiency(cfg, out);
        if (optimize->parsed()) return detail::cmd_optimize(cfg, out);
        if (figure2->parsed()) return detail::cmd_figure2(cfg, out);
        if (verify->parsed()) return detail::cmd_verify(cfg, out);
    } catch (const std::ios_base::failure &e) {
        err << "I/O error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace notouch::cli

#endif  // NOTOUCH_CLI_HPP
