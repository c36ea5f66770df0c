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

#ifndef NOTOUCH_FOCK_HPP
#define NOTOUCH_FOCK_HPP

// Fock-space kernels for passive linear optics.
//
// Convention used throughout the library: a mode unitary u acts on creation
// operators column-wise,
//
//     a^dag_j  ->  sum_k u(k, j) a^dag_k ,
//
// so a circuit built from stages S1, then S2, is the product S2 * S1.
// Fermionic Fock states are ordered products of creators with ascending mode
// index acting on the vacuum.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "notouch/errors.hpp"

namespace notouch {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Probability amplitude of one Fock configuration.
using Amplitude = Complex;

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kAmplitudeTolerance = 1e-10;

// Largest matrix order accepted by permanent(); cost is 2^(n-1) * n.
inline constexpr int kMaxPermanentOrder = 25;

enum class ParticleStatistics { Boson, Fermion };

inline std::string_view to_string(ParticleStatistics stats) {
    return stats == ParticleStatistics::Boson ? "boson" : "fermion";
}

/// Max-norm of M^dag M - I.
inline double unitarity_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ContractViolation("unitarity_defect: matrix is not square");
    }
    const ComplexMatrix gram = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return m.size() == 0 ? 0.0 : gram.cwiseAbs().maxCoeff();
}

/// Square complex matrix acting on optical modes.
class ModeUnitary {
 public:
    /// Only the shape is checked; use verified() to also check unitarity.
    explicit ModeUnitary(ComplexMatrix m) : m_(std::move(m)) {
        detail::require(m_.rows() == m_.cols() && m_.rows() > 0,
                        "ModeUnitary: matrix must be square and non-empty");
    }

    static ModeUnitary verified(ComplexMatrix m, double tolerance = kUnitarityTolerance) {
        ModeUnitary u(std::move(m));
        const double defect = unitarity_defect(u.m_);
        if (!(defect <= tolerance)) {
            throw ContractViolation("ModeUnitary: unitarity defect " + std::to_string(defect) +
                                    " exceeds tolerance");
        }
        return u;
    }

    static ModeUnitary identity(int dim) {
        detail::require(dim > 0, "ModeUnitary::identity: dim must be positive");
        return ModeUnitary(ComplexMatrix::Identity(dim, dim));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix &matrix() const { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    ModeUnitary adjoint() const { return ModeUnitary(m_.adjoint()); }
    double defect() const { return unitarity_defect(m_); }

    /// Stage composition: (a * b) applies b first, then a.
    friend ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b) {
        detail::require(a.dim() == b.dim(), "ModeUnitary: dimension mismatch in product");
        return ModeUnitary(a.m_ * b.m_);
    }

 private:
    ComplexMatrix m_;
};

/// Occupation numbers over a fixed set of modes.
class FockConfiguration {
 public:
    FockConfiguration() = default;

    explicit FockConfiguration(std::vector<int> occupations) : occ_(std::move(occupations)) {
        for (int n : occ_) {
            detail::require(n >= 0, "FockConfiguration: negative occupation");
        }
    }

    FockConfiguration(std::initializer_list<int> occupations)
        : FockConfiguration(std::vector<int>(occupations)) {}

    /// One particle in each listed mode (repeats allowed for bosons).
    static FockConfiguration from_modes(int dim, std::span<const int> modes) {
        std::vector<int> occ(static_cast<size_t>(dim), 0);
        for (int m : modes) {
            detail::require(m >= 0 && m < dim, "FockConfiguration::from_modes: mode out of range");
            ++occ[static_cast<size_t>(m)];
        }
        return FockConfiguration(std::move(occ));
    }
    static FockConfiguration from_modes(int dim, std::initializer_list<int> modes) {
        return from_modes(dim, std::span<const int>(modes.begin(), modes.size()));
    }

    int dim() const { return static_cast<int>(occ_.size()); }
    int operator[](int mode) const { return occ_[static_cast<size_t>(mode)]; }
    const std::vector<int> &occupations() const { return occ_; }

    int particle_number() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }

    bool is_single_occupancy() const {
        return std::all_of(occ_.begin(), occ_.end(), [](int n) { return n <= 1; });
    }

    /// Occupied modes in ascending order, each repeated by its occupation.
    std::vector<int> mode_list() const {
        std::vector<int> modes;
        modes.reserve(static_cast<size_t>(particle_number()));
        for (int m = 0; m < dim(); ++m) {
            modes.insert(modes.end(), static_cast<size_t>(occ_[static_cast<size_t>(m)]), m);
        }
        return modes;
    }

    /// prod_i n_i!
    double factorial_product() const {
        double p = 1.0;
        for (int n : occ_) {
            for (int k = 2; k <= n; ++k) p *= k;
        }
        return p;
    }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < occ_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(occ_[i]);
        }
        return s + ")";
    }

    auto operator<=>(const FockConfiguration &) const = default;
    bool operator==(const FockConfiguration &) const = default;

 private:
    std::vector<int> occ_;
};

/// Matrix permanent by Glynn's formula with Gray-code ordering of the sign
/// vectors, O(2^(n-1) n).
inline Complex permanent(const ComplexMatrix &m) {
    detail::require(m.rows() == m.cols(), "permanent: matrix is not square");
    const int n = static_cast<int>(m.rows());
    detail::require(n <= kMaxPermanentOrder, "permanent: matrix order exceeds the supported bound");
    if (n == 0) return Complex(1.0, 0.0);
    if (n == 1) return m(0, 0);

    // Column sums of diag(d) * m; starts with every d_i = +1.
    std::vector<Complex> col_sum(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) col_sum[static_cast<size_t>(j)] = m.col(j).sum();
    std::vector<int> sign(static_cast<size_t>(n), 1);

    auto product = [&] {
        Complex p = col_sum[0];
        for (int j = 1; j < n; ++j) p *= col_sum[static_cast<size_t>(j)];
        return p;
    };

    Complex total = product();
    int parity = 1;
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t k = 1; k < steps; ++k) {
        // Row 0 keeps d_0 = +1; Gray code flips row (1 + lowest set bit of k).
        const int row = 1 + std::countr_zero(k);
        const auto r = static_cast<size_t>(row);
        sign[r] = -sign[r];
        const double twice = 2.0 * sign[r];
        for (int j = 0; j < n; ++j) col_sum[static_cast<size_t>(j)] += twice * m(row, j);
        parity = -parity;
        total += static_cast<double>(parity) * product();
    }
    return total / static_cast<double>(steps);
}

inline Complex determinant(const ComplexMatrix &m) {
    detail::require(m.rows() == m.cols(), "determinant: matrix is not square");
    if (m.rows() == 0) return Complex(1.0, 0.0);
    return m.partialPivLu().determinant();
}

namespace detail {

// Rows follow the output occupations, columns the input occupations, each
// mode repeated by its occupation number in ascending order.
inline ComplexMatrix transition_submatrix(const ModeUnitary &u, const FockConfiguration &input,
                                          const FockConfiguration &output) {
    const std::vector<int> cols = input.mode_list();
    const std::vector<int> rows = output.mode_list();
    ComplexMatrix sub(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < cols.size(); ++c) {
            sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = u(rows[r], cols[c]);
        }
    }
    return sub;
}

}  // namespace detail

/// <output| U |input> for the many-particle evolution induced by u.
inline Amplitude transition_amplitude(const ModeUnitary &u, const FockConfiguration &input,
                                      const FockConfiguration &output, ParticleStatistics stats) {
    detail::require(input.dim() == u.dim() && output.dim() == u.dim(),
                    "transition_amplitude: configuration dimension differs from unitary");
    detail::require(input.particle_number() == output.particle_number(),
                    "transition_amplitude: particle-number mismatch");
    const ComplexMatrix sub = detail::transition_submatrix(u, input, output);
    if (stats == ParticleStatistics::Fermion) {
        detail::require(input.is_single_occupancy() && output.is_single_occupancy(),
                        "transition_amplitude: fermionic occupation above one");
        return determinant(sub);
    }
    return permanent(sub) / std::sqrt(input.factorial_product() * output.factorial_product());
}

/// Signature shared by transition_amplitude and any replacement kernel.
using AmplitudeKernel = std::function<Amplitude(const ModeUnitary &, const FockConfiguration &,
                                                const FockConfiguration &, ParticleStatistics)>;

/// Calls fn once for every configuration of `particles` particles in `dim`
/// modes, with occupations capped at max_occupation, in lexicographic order.
inline void for_each_configuration(int dim, int particles, int max_occupation,
                                   const std::function<void(const FockConfiguration &)> &fn) {
    detail::require(dim > 0 && particles >= 0, "for_each_configuration: invalid sizes");
    std::vector<int> occ(static_cast<size_t>(dim), 0);
    std::function<void(int, int)> fill = [&](int mode, int remaining) {
        if (mode == dim - 1) {
            if (remaining <= max_occupation) {
                occ[static_cast<size_t>(mode)] = remaining;
                fn(FockConfiguration(occ));
            }
            return;
        }
        for (int k = std::min(remaining, max_occupation); k >= 0; --k) {
            occ[static_cast<size_t>(mode)] = k;
            fill(mode + 1, remaining - k);
        }
        occ[static_cast<size_t>(mode)] = 0;
    };
    fill(0, particles);
}

using Distribution = std::map<FockConfiguration, Amplitude>;

/// Amplitudes of every output configuration accepted by `filter`.
inline Distribution output_distribution(
    const ModeUnitary &u, const FockConfiguration &input, ParticleStatistics stats,
    const std::function<bool(const FockConfiguration &)> &filter) {
    detail::require(input.dim() == u.dim(), "output_distribution: input dimension differs from unitary");
    const int n = input.particle_number();
    const int cap = stats == ParticleStatistics::Fermion ? 1 : n;
    Distribution out;
    for_each_configuration(u.dim(), n, cap, [&](const FockConfiguration &c) {
        if (filter(c)) out.emplace(c, transition_amplitude(u, input, c, stats));
    });
    return out;
}

inline double total_probability(const Distribution &d) {
    double p = 0.0;
    for (const auto &[config, amp] : d) p += std::norm(amp);
    return p;
}

}  // namespace notouch

#endif  // NOTOUCH_FOCK_HPP
