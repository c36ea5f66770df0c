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

#ifndef NOTOUCH_VERIFY_HPP
#define NOTOUCH_VERIFY_HPP

// Cross-module self-check run by `notouch verify`: kernels against the
// brute-force oracle, simulation against the closed-form efficiency, bosons
// against fermions, and the optimizer against a numerical search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "notouch/circuit.hpp"
#include "notouch/fock.hpp"
#include "notouch/golden_section.hpp"
#include "notouch/oracle.hpp"
#include "notouch/protocol.hpp"

namespace notouch {

struct VerifyOptions {
    int n = 3;
    std::uint64_t seed = 20210527;
    /// Kernel under test; replaced in mutation tests.
    AmplitudeKernel kernel = transition_amplitude;
};

struct CheckResult {
    enum class Status { Pass, Fail, Skip };
    std::string name;
    Status status = Status::Pass;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult &c) { return c.status == CheckResult::Status::Fail; });
    }
    const CheckResult *find(const std::string &name) const {
        for (const auto &c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
};

/// Haar-random unitary via QR of a complex Gaussian matrix.
inline ModeUnitary random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix z(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) z(r, c) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const Complex d = r(c, c);
        if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return ModeUnitary(std::move(q));
}

namespace detail {

inline CheckResult measured(std::string name, double residual, double tolerance, std::string note = {}) {
    CheckResult c{std::move(name), CheckResult::Status::Pass, residual, tolerance, std::move(note)};
    if (!(residual < tolerance)) c.status = CheckResult::Status::Fail;
    return c;
}

inline std::vector<double> verify_deltas(int n) { return {0.3, 0.5, optimal_delta(n)}; }

inline ProtocolParams params_for(int n, double delta, ParticleStatistics stats, bool correction) {
    ProtocolParams p;
    p.n_qubits = n;
    p.delta = delta;
    p.statistics = stats;
    p.fermion_phase_correction = correction;
    return p;
}

// Largest |kernel - oracle| over every output of one instance.
inline double oracle_discrepancy(const ModeUnitary &u, const FockConfiguration &input, ParticleStatistics stats,
                                 const AmplitudeKernel &kernel) {
    const Distribution reference = oracle::full_distribution(u, input, stats);
    const int cap = stats == ParticleStatistics::Fermion ? 1 : input.particle_number();
    double worst = 0.0;
    for_each_configuration(u.dim(), input.particle_number(), cap, [&](const FockConfiguration &out) {
        const auto it = reference.find(out);
        const Complex expected = it == reference.end() ? Complex{} : it->second;
        worst = std::max(worst, std::abs(kernel(u, input, out, stats) - expected));
    });
    return worst;
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions &opts) {
    detail::require(opts.n >= 2, "verify: n must be at least 2");
    const int n = opts.n;
    const GCompletion g = GCompletion::gram_schmidt(n);
    VerifyReport report;
    auto add = [&](CheckResult c) { report.checks.push_back(std::move(c)); };

    // Circuit unitarity.
    {
        const double defect =
            build_protocol_unitary(detail::params_for(n, optimal_delta(n), ParticleStatistics::Boson, false), g)
                .defect();
        add(detail::measured("unitarity", defect, kUnitarityTolerance));
    }

    double w_boson = 0.0, eff_gap = 0.0, stats_gap = 0.0, w_fermion = 0.0, sign_pattern = 0.0;
    for (double delta : detail::verify_deltas(n)) {
        const auto boson =
            run_protocol(detail::params_for(n, delta, ParticleStatistics::Boson, false), g, opts.kernel);
        const auto fermion =
            run_protocol(detail::params_for(n, delta, ParticleStatistics::Fermion, true), g, opts.kernel);
        const auto raw_fermion =
            run_protocol(detail::params_for(n, delta, ParticleStatistics::Fermion, false), g, opts.kernel);
        w_boson = std::max(w_boson, std::abs(1.0 - fidelity(boson, w_state(n))));
        eff_gap = std::max(eff_gap, std::abs(boson.success_probability - efficiency_closed_form(n, delta)));
        stats_gap = std::max(stats_gap, std::abs(boson.success_probability - fermion.success_probability));
        w_fermion = std::max(w_fermion, max_amplitude_difference(fermion, w_state(n)));
        PostSelectedState expected = w_state(n);
        for (int q = 2; q <= n; ++q) expected.amplitudes[one_hot_index(n, q)] *= -1.0;
        sign_pattern = std::max(sign_pattern, max_amplitude_difference(raw_fermion, expected));
    }
    add(detail::measured("w-fidelity-boson", w_boson, kAmplitudeTolerance, "delta in {0.3, 0.5, delta_max}"));
    add(detail::measured("efficiency-vs-simulation", eff_gap, kAmplitudeTolerance));
    add(detail::measured("boson-fermion-efficiency", stats_gap, 1e-12));
    add(detail::measured("w-fidelity-fermion-corrected", w_fermion, kAmplitudeTolerance, "entrywise"));
    add(detail::measured("fermion-sign-pattern-uncorrected", sign_pattern, kAmplitudeTolerance));

    if (n >= 3) {
        const auto params = detail::params_for(n, optimal_delta(n), ParticleStatistics::Boson, false);
        const double diff = max_amplitude_difference(run_protocol(params, g, opts.kernel),
                                                     run_protocol(params, GCompletion::randomized(n, opts.seed),
                                                                  opts.kernel));
        add(detail::measured("g-completion-independence", diff, kAmplitudeTolerance));
    } else {
        add({"g-completion-independence", CheckResult::Status::Skip, 0.0, 0.0, "G is 1x1 for N=2"});
    }

    // Kernels against the oracle on random instances.
    {
        std::mt19937_64 rng(opts.seed);
        double worst = 0.0;
        for (int dim = 2; dim <= 6; ++dim) {
            for (int particles = 1; particles <= std::min(3, dim); ++particles) {
                const ModeUnitary u = random_unitary(dim, rng);
                std::vector<int> fermion_modes;
                for (int i = 0; i < particles; ++i) fermion_modes.push_back(i);
                std::vector<int> boson_modes(fermion_modes);
                boson_modes.back() = 0;  // includes a doubly occupied input
                for (auto stats : {ParticleStatistics::Boson, ParticleStatistics::Fermion}) {
                    const auto &modes = stats == ParticleStatistics::Boson ? boson_modes : fermion_modes;
                    worst = std::max(worst, detail::oracle_discrepancy(u, FockConfiguration::from_modes(dim, modes),
                                                                       stats, opts.kernel));
                }
            }
        }
        add(detail::measured("oracle-random-unitaries", worst, kAmplitudeTolerance, "dim 2..6, up to 3 particles"));
    }

    {
        const ModeLayout layout(n);
        if (!oracle::within_cost_guard(n, layout.dim())) {
            add({"oracle-protocol-circuit", CheckResult::Status::Skip, 0.0, 0.0,
                 "N=" + std::to_string(n) + " (" + std::to_string(layout.dim()) +
                     " modes) exceeds the oracle cost guard"});
        } else {
            std::vector<int> modes;
            for (int k = 1; k <= n; ++k) modes.push_back(layout.path(k));
            const auto input = FockConfiguration::from_modes(layout.dim(), modes);
            double worst = 0.0;
            for (auto stats : {ParticleStatistics::Boson, ParticleStatistics::Fermion}) {
                const ModeUnitary u = build_protocol_unitary(detail::params_for(n, optimal_delta(n), stats, false), g);
                worst = std::max(worst, detail::oracle_discrepancy(u, input, stats, opts.kernel));
            }
            add(detail::measured("oracle-protocol-circuit", worst, kAmplitudeTolerance));
        }
    }

    // Closed forms; independent of n.
    {
        double worst = std::abs(optimal_delta_squared(2) - 0.5) + std::abs(optimal_efficiency(2) - 0.5);
        for (int m = 3; m <= 50; ++m) {
            const double numeric = std::sqrt(golden_section_optimal_delta_squared(m).x);
            worst = std::max(worst, std::abs(numeric - optimal_delta(m)));
        }
        add(detail::measured("optimal-delta-vs-golden-section", worst, 1e-9, "N = 2..50"));
    }
    {
        const double inv_e = std::exp(-1.0);
        double worst = 0.0;
        for (int m = 50; m <= 300; ++m) {
            const double nn = m;
            worst = std::max(worst, std::abs(nn * nn * optimal_efficiency(m) - inv_e - 3.5 * inv_e / nn) * nn * nn);
        }
        add(detail::measured("asymptotic-remainder", worst, 10.0 * inv_e, "N = 50..300, scaled by N^4"));
    }
    {
        double worst = -1.0;  // largest competitor/ours ratio
        for (int m = 10; m <= 300; ++m) worst = std::max(worst, competitor_asymptotic(m) / optimal_efficiency(m));
        add(detail::measured("beats-competitor-asymptote", worst, 1.0, "ratio competitor/ours, N = 10..300"));
    }
    return report;
}

inline void print_report(const VerifyReport &report, std::ostream &out) {
    for (const auto &c : report.checks) {
        char buf[64];
        switch (c.status) {
            case CheckResult::Status::Skip: out << "SKIP " << c.name << ": " << c.note << '\n'; continue;
            case CheckResult::Status::Pass: out << "PASS "; break;
            case CheckResult::Status::Fail: out << "FAIL "; break;
        }
        std::snprintf(buf, sizeof buf, "residual=%.3e tol=%.1e", c.residual, c.tolerance);
        out << c.name << ' ' << buf;
        if (!c.note.empty()) out << " (" << c.note << ')';
        out << '\n';
    }
}

}  // namespace notouch

#endif  // NOTOUCH_VERIFY_HPP
