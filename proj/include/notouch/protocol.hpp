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

#ifndef NOTOUCH_PROTOCOL_HPP
#define NOTOUCH_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "notouch/circuit.hpp"
#include "notouch/errors.hpp"
#include "notouch/fock.hpp"

namespace notouch {

// ---------------------------------------------------------------------------
// Coincidence sector
//
// A coincidence outcome has one particle in each qubit pair {k, kb}. Outcomes
// are indexed 0 .. 2^N - 1 with qubit 1 as the most significant bit and a set
// bit meaning "down" (particle in kb). Ascending index is then the same as
// ascending lexicographic order of the occupied mode indices.
//
// Bit strings are written qubit 1 first with '1' for up (particle in path k)
// and '0' for down, so the W state lives on the one-hot strings.
// ---------------------------------------------------------------------------

inline std::string coincidence_bits(std::size_t index, int n_qubits) {
    std::string bits(static_cast<size_t>(n_qubits), '1');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1u) bits[static_cast<size_t>(q)] = '0';
    }
    return bits;
}

inline std::size_t coincidence_index(std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) {
        detail::require(c == '0' || c == '1', "coincidence_index: bit strings use '0' and '1'");
        index = (index << 1) | (c == '0' ? 1u : 0u);
    }
    return index;
}

inline FockConfiguration coincidence_configuration(const ModeLayout &layout, std::size_t index) {
    const int n = layout.n_qubits();
    std::vector<int> modes;
    for (int k = 1; k <= n; ++k) {
        const bool down = (index >> (n - k)) & 1u;
        modes.push_back(down ? layout.bar(k) : layout.path(k));
    }
    return FockConfiguration::from_modes(layout.dim(), modes);
}

/// Index of the one-hot string with qubit q (1-based) up.
inline std::size_t one_hot_index(int n_qubits, int q) {
    const std::size_t all_down = (std::size_t{1} << n_qubits) - 1;
    return all_down & ~(std::size_t{1} << (n_qubits - q));
}

/// Normalized N-qubit state over the coincidence sector together with the
/// probability that post-selection produced it.
///
/// The global phase is fixed so that the first non-zero amplitude (ascending
/// index) is real and positive. When the post-selection probability is zero
/// the amplitudes are all zero.
struct PostSelectedState {
    int n_qubits = 0;
    std::vector<Complex> amplitudes;
    double success_probability = 0.0;

    Complex amplitude(std::string_view bits) const {
        detail::require(static_cast<int>(bits.size()) == n_qubits, "PostSelectedState: wrong bit-string length");
        return amplitudes[coincidence_index(bits)];
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amplitudes) s += std::norm(a);
        return s;
    }
};

namespace detail {

inline void fix_global_phase(std::vector<Complex> &amps) {
    for (const auto &a : amps) {
        if (std::abs(a) > 0.0) {
            const Complex phase = std::conj(a) / std::abs(a);
            for (auto &b : amps) b *= phase;
            return;
        }
    }
}

}  // namespace detail

/// Builds a PostSelectedState from unnormalized coincidence amplitudes.
inline PostSelectedState post_select(int n_qubits, std::vector<Complex> raw) {
    detail::require(raw.size() == (std::size_t{1} << n_qubits), "post_select: expected 2^N amplitudes");
    PostSelectedState s;
    s.n_qubits = n_qubits;
    for (const auto &a : raw) s.success_probability += std::norm(a);
    if (s.success_probability > 0.0) {
        const double scale = 1.0 / std::sqrt(s.success_probability);
        for (auto &a : raw) a *= scale;
        detail::fix_global_phase(raw);
    }
    s.amplitudes = std::move(raw);
    return s;
}

/// W_N: 1/sqrt(N) on every one-hot string.
inline PostSelectedState w_state(int n) {
    detail::require(n >= 2, "w_state: n must be at least 2");
    std::vector<Complex> amps(std::size_t{1} << n, Complex{});
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 1; q <= n; ++q) amps[one_hot_index(n, q)] = a;
    PostSelectedState s;
    s.n_qubits = n;
    s.amplitudes = std::move(amps);
    s.success_probability = 1.0;
    return s;
}

/// |<a|b>|^2
inline double fidelity(const PostSelectedState &a, const PostSelectedState &b) {
    detail::require(a.n_qubits == b.n_qubits && a.amplitudes.size() == b.amplitudes.size(),
                    "fidelity: states have different sizes");
    Complex overlap{};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return std::norm(overlap);
}

/// Max-norm distance between amplitude vectors.
inline double max_amplitude_difference(const PostSelectedState &a, const PostSelectedState &b) {
    detail::require(a.amplitudes.size() == b.amplitudes.size(), "max_amplitude_difference: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) d = std::max(d, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    return d;
}

/// alpha eps^(N-1) - beta delta eps^(N-2) / (N-1); zero when the post-selected
/// amplitudes are balanced.
inline double balance_residual(int n, double delta, double alpha) {
    const double beta = std::sqrt(1.0 - alpha * alpha);
    const double eps = std::sqrt(1.0 - delta * delta);
    return alpha * std::pow(eps, n - 1) - beta * delta * std::pow(eps, n - 2) / (n - 1);
}

/// Simulates the circuit on one particle per subsystem and post-selects on
/// coincidences. Only the 2^N coincidence amplitudes are computed.
inline PostSelectedState run_protocol(const ProtocolParams &params, const GCompletion &g,
                                      const AmplitudeKernel &kernel = transition_amplitude) {
    const ModeUnitary u = build_protocol_unitary(params, g);
    const ModeLayout layout(params.n_qubits);
    std::vector<int> input_modes;
    for (int k = 1; k <= params.n_qubits; ++k) input_modes.push_back(layout.path(k));
    const auto input = FockConfiguration::from_modes(layout.dim(), input_modes);

    std::vector<Complex> raw(std::size_t{1} << params.n_qubits);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = kernel(u, input, coincidence_configuration(layout, i), params.statistics);
    }
    return post_select(params.n_qubits, std::move(raw));
}

inline PostSelectedState run_protocol(const ProtocolParams &params) {
    return run_protocol(params, GCompletion::gram_schmidt(params.n_qubits));
}

// ---------------------------------------------------------------------------
// Closed-form efficiency
// ---------------------------------------------------------------------------

/// Success probability N d^2 (1-d^2)^(N-1) / (d^2 + (N-1)^2 (1-d^2)), d = delta.
inline double efficiency_closed_form(int n, double delta) {
    detail::require(n >= 2, "efficiency_closed_form: n must be at least 2");
    detail::require(delta >= 0.0 && delta <= 1.0, "efficiency_closed_form: delta outside [0, 1]");
    const double d2 = delta * delta;
    const double m = n - 1.0;
    return n * d2 * std::pow(1.0 - d2, n - 1) / (d2 + m * m * (1.0 - d2));
}

/// delta^2 at which efficiency_closed_form is stationary; for N = 2 the
/// general expression is 0/0 and the maximizer of 2 d^2 (1 - d^2) is used.
inline double optimal_delta_squared(int n) {
    detail::require(n >= 2, "optimal_delta: n must be at least 2");
    if (n == 2) return 0.5;
    const double nn = n;
    const double disc = (nn * nn * nn - 6.0 * nn * nn + 13.0 * nn - 8.0) / nn;
    return (1.0 - nn + std::sqrt(disc)) / (4.0 - 2.0 * nn);
}

inline double optimal_delta(int n) { return std::sqrt(optimal_delta_squared(n)); }

inline double optimal_efficiency(int n) { return efficiency_closed_form(n, optimal_delta(n)); }

/// e^-1 / N^2 + 7 e^-1 / (2 N^3)
inline double asymptotic_efficiency(int n) {
    detail::require(n >= 2, "asymptotic_efficiency: n must be at least 2");
    const double nn = n;
    const double inv_e = std::exp(-1.0);
    return inv_e / (nn * nn) + 7.0 * inv_e / (2.0 * nn * nn * nn);
}

/// Two-term asymptote e^-1 / N^2 + e^-1 / (2 N^3) of the quantum-erasure
/// scheme with an auxiliary particle.
inline double competitor_asymptotic(int n) {
    detail::require(n >= 2, "competitor_asymptotic: n must be at least 2");
    const double nn = n;
    const double inv_e = std::exp(-1.0);
    return inv_e / (nn * nn) + inv_e / (2.0 * nn * nn * nn);
}

struct EfficiencyRow {
    int n = 0;
    double delta_max = 0.0;
    double eff_exact = 0.0;
    double eff_asymptotic = 0.0;
    double eff_competitor_asymptotic = 0.0;
};

struct EfficiencyCurve {
    std::vector<EfficiencyRow> rows;
};

inline EfficiencyRow efficiency_row(int n) {
    return EfficiencyRow{n, optimal_delta(n), optimal_efficiency(n), asymptotic_efficiency(n),
                         competitor_asymptotic(n)};
}

/// One row per N = 2..n_max.
inline EfficiencyCurve efficiency_curve(int n_max) {
    detail::require(n_max >= 2, "efficiency_curve: n_max must be at least 2");
    EfficiencyCurve curve;
    curve.rows.reserve(static_cast<size_t>(n_max - 1));
    for (int n = 2; n <= n_max; ++n) curve.rows.push_back(efficiency_row(n));
    return curve;
}

}  // namespace notouch

#endif  // NOTOUCH_PROTOCOL_HPP
