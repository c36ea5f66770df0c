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

#ifndef NOTOUCH_ORACLE_HPP
#define NOTOUCH_ORACLE_HPP

// Brute-force reference for the Fock kernels. A many-particle state is kept as
// an explicit polynomial in creation operators and multiplied out factor by
// factor; nothing here calls permanent() or determinant().

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "notouch/errors.hpp"
#include "notouch/fock.hpp"

namespace notouch::oracle {

inline constexpr int kMaxParticles = 4;
inline constexpr int kMaxModes = 10;

/// sum_k c_k a^dag_k for a single particle.
using SingleParticleMode = std::vector<std::pair<int, Complex>>;

/// Polynomial in creation operators. Keys are monomials written as the
/// ascending list of modes (repeats only for bosons).
class OperatorPolynomial {
 public:
    using Monomial = std::vector<int>;

    explicit OperatorPolynomial(ParticleStatistics stats) : stats_(stats) { terms_.emplace(Monomial{}, 1.0); }

    ParticleStatistics statistics() const { return stats_; }
    const std::map<Monomial, Complex> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Right-multiplies by one creator superposition.
    void multiply(const SingleParticleMode &factor) {
        std::map<Monomial, Complex> next;
        for (const auto &[mono, coeff] : terms_) {
            for (const auto &[mode, c] : factor) {
                if (c == Complex{}) continue;
                const auto pos = std::lower_bound(mono.begin(), mono.end(), mode);
                double sign = 1.0;
                if (stats_ == ParticleStatistics::Fermion) {
                    if (pos != mono.end() && *pos == mode) continue;  // Pauli exclusion
                    // Anticommute the new creator past every larger mode.
                    if ((mono.end() - pos) % 2 == 1) sign = -1.0;
                }
                Monomial m = mono;
                m.insert(m.begin() + (pos - mono.begin()), mode);
                next[m] += sign * coeff * c;
            }
        }
        terms_ = std::move(next);
    }

    void scale(Complex s) {
        for (auto &[mono, coeff] : terms_) coeff *= s;
    }

    /// Fock amplitudes: a bosonic monomial prod a^dag^(n_i) |0> equals
    /// sqrt(prod n_i!) |n>.
    Distribution to_fock(int dim) const {
        Distribution out;
        for (const auto &[mono, coeff] : terms_) {
            const auto config = FockConfiguration::from_modes(dim, mono);
            const double weight =
                stats_ == ParticleStatistics::Boson ? std::sqrt(config.factorial_product()) : 1.0;
            out[config] += coeff * weight;
        }
        return out;
    }

 private:
    ParticleStatistics stats_;
    std::map<Monomial, Complex> terms_;
};

inline OperatorPolynomial expand_product(const std::vector<SingleParticleMode> &factors, ParticleStatistics stats) {
    OperatorPolynomial p(stats);
    for (const auto &f : factors) p.multiply(f);
    return p;
}

/// Every output amplitude of `input` evolved by u, obtained by substituting
/// a^dag_j -> sum_k u(k, j) a^dag_k into the input creators (ascending order)
/// and expanding.
inline Distribution full_distribution(const ModeUnitary &u, const FockConfiguration &input, ParticleStatistics stats) {
    detail::require(input.dim() == u.dim(), "full_distribution: input dimension differs from unitary");
    const int particles = input.particle_number();
    if (particles > kMaxParticles || u.dim() > kMaxModes) {
        throw OracleRefused("full_distribution: instance with " + std::to_string(particles) + " particles in " +
                            std::to_string(u.dim()) + " modes exceeds the oracle cost guard (" +
                            std::to_string(kMaxParticles) + " particles, " + std::to_string(kMaxModes) + " modes)");
    }
    if (stats == ParticleStatistics::Fermion) {
        detail::require(input.is_single_occupancy(), "full_distribution: fermionic occupation above one");
    }
    std::vector<SingleParticleMode> factors;
    for (int j : input.mode_list()) {
        SingleParticleMode column;
        for (int k = 0; k < u.dim(); ++k) column.emplace_back(k, u(k, j));
        factors.push_back(std::move(column));
    }
    OperatorPolynomial p = expand_product(factors, stats);
    if (stats == ParticleStatistics::Boson) p.scale(1.0 / std::sqrt(input.factorial_product()));
    return p.to_fock(u.dim());
}

/// Whether full_distribution would accept an instance of this size.
inline bool within_cost_guard(int particles, int modes) {
    return particles <= kMaxParticles && modes <= kMaxModes;
}

}  // namespace notouch::oracle

#endif  // NOTOUCH_ORACLE_HPP
