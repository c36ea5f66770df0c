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

#ifndef NOTOUCH_CIRCUIT_HPP
#define NOTOUCH_CIRCUIT_HPP

// Construction of the (3N-2)-mode no-touching W-state circuit.
//
// Mode labels: subsystem A1 holds paths 1, 1b and the auxiliaries 2bb..(N-1)bb;
// subsystem Ak (k >= 2) holds paths k and kb. Qubit Bk is the pair {k, kb}.
// The first output wire of G, written 1bb in the stage equations, is the same
// physical wire as 1b, which is what makes the wire count 3N-2.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "notouch/errors.hpp"
#include "notouch/fock.hpp"

namespace notouch {

enum class ModeKind { Path, Bar, DoubleBar };

struct ModeLabel {
    ModeKind kind;
    int k;

    std::string to_string() const {
        switch (kind) {
            case ModeKind::Path: return std::to_string(k);
            case ModeKind::Bar: return std::to_string(k) + "b";
            case ModeKind::DoubleBar: return std::to_string(k) + "bb";
        }
        return "?";
    }
    bool operator==(const ModeLabel &) const = default;
};

/// Canonical indexing of the 3N-2 modes:
///   1 -> 0,  1b -> 1,  kbb -> k (k = 2..N-1),
///   k -> (N-2) + 2k - 2,  kb -> (N-2) + 2k - 1  (k = 2..N).
class ModeLayout {
 public:
    explicit ModeLayout(int n_qubits) : n_(n_qubits) {
        detail::require(n_qubits >= 2, "ModeLayout: need at least two qubits");
    }

    int n_qubits() const { return n_; }
    int dim() const { return 3 * n_ - 2; }

    int path(int k) const {
        check_qubit(k);
        return k == 1 ? 0 : (n_ - 2) + 2 * k - 2;
    }
    int bar(int k) const {
        check_qubit(k);
        return k == 1 ? 1 : (n_ - 2) + 2 * k - 1;
    }
    /// Auxiliary wire kbb, k = 1..N-1; 1bb is wire 1b.
    int double_bar(int k) const {
        detail::require(k >= 1 && k <= n_ - 1, "ModeLayout: double-bar index out of range");
        return k == 1 ? bar(1) : k;
    }

    std::pair<int, int> qubit_modes(int k) const { return {path(k), bar(k)}; }

    /// Wires G acts on, in order: 1b, 2bb, ..., (N-1)bb.
    std::vector<int> g_wires() const {
        std::vector<int> wires;
        for (int k = 1; k <= n_ - 1; ++k) wires.push_back(double_bar(k));
        return wires;
    }

    int index_of(const ModeLabel &label) const {
        switch (label.kind) {
            case ModeKind::Path: return path(label.k);
            case ModeKind::Bar: return bar(label.k);
            case ModeKind::DoubleBar:
                detail::require(label.k >= 2, "ModeLayout: 1bb is an alias of 1b, not a distinct label");
                return double_bar(label.k);
        }
        throw ContractViolation("ModeLayout: unknown label kind");
    }

    ModeLabel label_of(int index) const {
        detail::require(index >= 0 && index < dim(), "ModeLayout: index out of range");
        if (index == 0) return {ModeKind::Path, 1};
        if (index == 1) return {ModeKind::Bar, 1};
        if (index <= n_ - 1) return {ModeKind::DoubleBar, index};
        const int offset = index - (n_ - 2);  // 2k-2 or 2k-1
        const int k = offset / 2 + 1;
        return {offset % 2 == 0 ? ModeKind::Path : ModeKind::Bar, k};
    }

 private:
    void check_qubit(int k) const {
        detail::require(k >= 1 && k <= n_, "ModeLayout: qubit index out of range");
    }

    int n_;
};

inline ModeLayout build_layout(int n) { return ModeLayout(n); }

/// Reflectivity alpha of U that equalizes all post-selected amplitudes:
///   alpha^2 = delta^2 / (delta^2 + (N-1)^2 (1 - delta^2)),  positive root.
inline double balanced_alpha(int n, double delta) {
    detail::require(n >= 2, "balanced_alpha: n must be at least 2");
    detail::require(delta >= 0.0 && delta <= 1.0, "balanced_alpha: delta outside [0, 1]");
    if (delta == 0.0 || delta == 1.0) {
        throw DegenerateParameter("balanced_alpha: delta must lie strictly inside (0, 1)");
    }
    const double d2 = delta * delta;
    const double m = n - 1.0;
    return delta / std::sqrt(d2 + m * m * (1.0 - d2));
}

/// Real beam-splitter parameters of the protocol. beta and epsilon are
/// implied by unitarity of U and V.
struct ProtocolParams {
    int n_qubits = 2;
    double delta = 0.0;
    /// Unset means the balanced value from balanced_alpha().
    std::optional<double> alpha;
    ParticleStatistics statistics = ParticleStatistics::Boson;
    /// Phase e^{i pi} on output path 1. A phase on input path 1 would only
    /// change the global phase, since every term carries that particle.
    bool fermion_phase_correction = false;

    void validate() const {
        detail::require(n_qubits >= 2, "ProtocolParams: n_qubits must be at least 2");
        detail::require(delta >= 0.0 && delta <= 1.0, "ProtocolParams: delta outside [0, 1]");
        if (alpha) {
            detail::require(*alpha >= 0.0 && *alpha <= 1.0, "ProtocolParams: alpha outside [0, 1]");
        }
    }

    double epsilon() const { return std::sqrt(1.0 - delta * delta); }
};

/// The (N-1)x(N-1) unitary G whose first column is uniform. The remaining
/// columns are free; they do not affect the post-selected state.
class GCompletion {
 public:
    explicit GCompletion(ComplexMatrix m) : m_(std::move(m)) {
        detail::require(m_.rows() == m_.cols() && m_.rows() >= 1, "GCompletion: matrix must be square");
        const double defect = unitarity_defect(m_);
        detail::require(defect <= kUnitarityTolerance,
                        "GCompletion: unitarity defect " + std::to_string(defect));
        const double expected = 1.0 / std::sqrt(static_cast<double>(m_.rows()));
        for (Eigen::Index r = 0; r < m_.rows(); ++r) {
            detail::require(std::abs(m_(r, 0) - Complex(expected, 0.0)) <= 1e-15,
                            "GCompletion: first column is not uniform");
        }
    }

    /// Completes the uniform column against e_0, e_1, ... by Gram-Schmidt.
    static GCompletion gram_schmidt(int n_qubits) {
        detail::require(n_qubits >= 2, "GCompletion: n_qubits must be at least 2");
        const int m = n_qubits - 1;
        std::vector<Eigen::VectorXcd> candidates;
        for (int i = 0; i < m; ++i) candidates.push_back(Eigen::VectorXcd::Unit(m, i));
        return GCompletion(complete(m, candidates));
    }

    /// Completes the uniform column against seeded complex Gaussian vectors.
    static GCompletion randomized(int n_qubits, std::uint64_t seed) {
        detail::require(n_qubits >= 2, "GCompletion: n_qubits must be at least 2");
        const int m = n_qubits - 1;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        std::vector<Eigen::VectorXcd> candidates;
        for (int i = 0; i < m; ++i) {
            Eigen::VectorXcd v(m);
            for (int r = 0; r < m; ++r) v(r) = Complex(normal(rng), normal(rng));
            candidates.push_back(std::move(v));
        }
        return GCompletion(complete(m, candidates));
    }

    int size() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix &matrix() const { return m_; }

 private:
    static ComplexMatrix complete(int m, const std::vector<Eigen::VectorXcd> &candidates) {
        ComplexMatrix g(m, m);
        g.col(0).setConstant(Complex(1.0 / std::sqrt(static_cast<double>(m)), 0.0));
        int filled = 1;
        for (const auto &c : candidates) {
            if (filled == m) break;
            Eigen::VectorXcd v = c;
            // Two passes of modified Gram-Schmidt.
            for (int pass = 0; pass < 2; ++pass) {
                for (int j = 0; j < filled; ++j) v -= g.col(j).dot(v) * g.col(j);
            }
            const double norm = v.norm();
            if (norm < 1e-6) continue;
            g.col(filled++) = v / norm;
        }
        detail::require(filled == m, "GCompletion: candidate vectors do not span the space");
        return g;
    }

    ComplexMatrix m_;
};

/// Places u on the listed modes (in order) of a dim-mode identity.
inline ModeUnitary embed_local(const ComplexMatrix &u, std::span<const int> target_modes, int dim) {
    detail::require(u.rows() == u.cols(), "embed_local: local matrix is not square");
    detail::require(static_cast<Eigen::Index>(target_modes.size()) == u.rows(),
                    "embed_local: target mode count differs from local dimension");
    std::vector<bool> used(static_cast<size_t>(std::max(dim, 0)), false);
    for (int t : target_modes) {
        detail::require(t >= 0 && t < dim, "embed_local: target mode out of range");
        detail::require(!used[static_cast<size_t>(t)], "embed_local: repeated target mode");
        used[static_cast<size_t>(t)] = true;
    }
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (size_t r = 0; r < target_modes.size(); ++r) {
        for (size_t c = 0; c < target_modes.size(); ++c) {
            m(target_modes[r], target_modes[c]) =
                u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return ModeUnitary(std::move(m));
}

inline ModeUnitary embed_local(const ComplexMatrix &u, std::initializer_list<int> target_modes, int dim) {
    return embed_local(u, std::span<const int>(target_modes.begin(), target_modes.size()), dim);
}

/// 2x2 real reflection [[c, s], [s, -c]] with s = sqrt(1 - c^2); U and V.
inline ComplexMatrix reflection_splitter(double c) {
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    ComplexMatrix m(2, 2);
    m << c, s, s, -c;
    return m;
}

/// Path permutation: 1 -> 1, kbb -> k+1 (k = 1..N-1), k -> (k-1)bb
/// (k = 2..N), kb -> kb (k = 2..N).
inline ModeUnitary build_sigma(const ModeLayout &layout) {
    const int n = layout.n_qubits();
    const int dim = layout.dim();
    std::vector<int> image(static_cast<size_t>(dim), -1);
    image[static_cast<size_t>(layout.path(1))] = layout.path(1);
    for (int k = 1; k <= n - 1; ++k) {
        image[static_cast<size_t>(layout.double_bar(k))] = layout.path(k + 1);
    }
    for (int k = 2; k <= n; ++k) {
        image[static_cast<size_t>(layout.path(k))] = layout.double_bar(k - 1);
        image[static_cast<size_t>(layout.bar(k))] = layout.bar(k);
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int src = 0; src < dim; ++src) {
        m(image[static_cast<size_t>(src)], src) = 1.0;
    }
    return ModeUnitary(std::move(m));
}

inline ModeUnitary path1_phase_shift(const ModeLayout &layout) {
    ComplexMatrix m = ComplexMatrix::Identity(layout.dim(), layout.dim());
    m(layout.path(1), layout.path(1)) = -1.0;
    return ModeUnitary(std::move(m));
}

/// Individual stages of the circuit, in application order.
struct ProtocolStages {
    ModeUnitary local;  // U on {1, 1b}, V on every {k, kb}
    ModeUnitary g;      // G on 1b, 2bb, ..., (N-1)bb
    ModeUnitary sigma;
    ModeUnitary g_inverse;
    ModeUnitary phase;  // identity unless the path-1 phase correction is on

    ModeUnitary total() const { return phase * g_inverse * sigma * g * local; }
};

inline ProtocolStages build_protocol_stages(const ProtocolParams &params, const GCompletion &g) {
    params.validate();
    const int n = params.n_qubits;
    detail::require(g.size() == n - 1, "build_protocol_unitary: G has wrong dimension for N");
    const ModeLayout layout(n);
    const int dim = layout.dim();
    const double alpha = params.alpha ? *params.alpha : balanced_alpha(n, params.delta);

    ModeUnitary local = embed_local(reflection_splitter(alpha), {layout.path(1), layout.bar(1)}, dim);
    const ComplexMatrix v = reflection_splitter(params.delta);
    for (int k = 2; k <= n; ++k) {
        local = embed_local(v, {layout.path(k), layout.bar(k)}, dim) * local;
    }
    const std::vector<int> wires = layout.g_wires();
    return ProtocolStages{
        std::move(local),
        embed_local(g.matrix(), wires, dim),
        build_sigma(layout),
        embed_local(g.matrix().adjoint(), wires, dim),
        params.fermion_phase_correction ? path1_phase_shift(layout) : ModeUnitary::identity(dim),
    };
}

/// Full circuit G^-1 . sigma . G . (U (+) V ... V), optionally followed by the
/// path-1 phase shift. Checked for unitarity.
inline ModeUnitary build_protocol_unitary(const ProtocolParams &params, const GCompletion &g) {
    return ModeUnitary::verified(build_protocol_stages(params, g).total().matrix());
}

}  // namespace notouch

#endif  // NOTOUCH_CIRCUIT_HPP
