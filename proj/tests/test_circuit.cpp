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

#include "notouch/circuit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "notouch/io.hpp"
#include "notouch/protocol.hpp"
#include "reference.hpp"

using namespace notouch;

namespace {

ProtocolParams params(int n, double delta) {
    ProtocolParams p;
    p.n_qubits = n;
    p.delta = delta;
    return p;
}

// Column `mode` of a stage: where a single creator in that mode ends up.
Eigen::VectorXcd image_of(const ModeUnitary &u, int mode) { return u.matrix().col(mode); }

}  // namespace

TEST(ModeLayout, mode_counts) {
    EXPECT_EQ(build_layout(2).dim(), 4);
    EXPECT_EQ(build_layout(3).dim(), 7);
    EXPECT_EQ(build_layout(5).dim(), 13);
    EXPECT_THROW(build_layout(1), ContractViolation);
}

TEST(ModeLayout, n2_has_no_auxiliary_modes) {
    const ModeLayout l(2);
    EXPECT_EQ(l.path(1), 0);
    EXPECT_EQ(l.bar(1), 1);
    EXPECT_EQ(l.path(2), 2);
    EXPECT_EQ(l.bar(2), 3);
    EXPECT_EQ(l.g_wires(), std::vector<int>{1});
    EXPECT_THROW(l.index_of({ModeKind::DoubleBar, 2}), ContractViolation);
}

TEST(ModeLayout, canonical_indexing_is_bijective) {
    for (int n = 2; n <= 9; ++n) {
        const ModeLayout l(n);
        std::set<int> seen;
        for (int i = 0; i < l.dim(); ++i) {
            const ModeLabel label = l.label_of(i);
            EXPECT_EQ(l.index_of(label), i) << label.to_string();
            seen.insert(i);
        }
        EXPECT_EQ(static_cast<int>(seen.size()), 3 * n - 2);
        std::set<int> pairs;
        for (int k = 1; k <= n; ++k) {
            const auto [up, down] = l.qubit_modes(k);
            pairs.insert(up);
            pairs.insert(down);
        }
        EXPECT_EQ(static_cast<int>(pairs.size()), 2 * n);
        // Reference scheme from the module contract.
        for (int k = 2; k <= n; ++k) {
            EXPECT_EQ(l.path(k), (n - 2) + 2 * k - 2);
            EXPECT_EQ(l.bar(k), (n - 2) + 2 * k - 1);
        }
        for (int k = 2; k <= n - 1; ++k) EXPECT_EQ(l.double_bar(k), k);
    }
}

TEST(EmbedLocal, identity_anywhere_is_identity) {
    const auto u = embed_local(ComplexMatrix::Identity(2, 2), {3, 1}, 5);
    EXPECT_TRUE(u.matrix().isApprox(ComplexMatrix::Identity(5, 5)));
}

TEST(EmbedLocal, u_acts_on_path_one) {
    const double alpha = 0.6;
    const ModeLayout l(2);
    const auto u = embed_local(reflection_splitter(alpha), {l.path(1), l.bar(1)}, l.dim());
    const auto img = image_of(u, l.path(1));
    EXPECT_NEAR(std::abs(img(l.path(1)) - alpha), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(img(l.bar(1)) - 0.8), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(img(l.path(2))) + std::abs(img(l.bar(2))), 0.0, 0.0);
}

TEST(EmbedLocal, preserves_unitarity_and_checks_targets) {
    std::mt19937_64 rng(3);
    for (int k = 1; k <= 4; ++k) {
        const ModeUnitary small = reference::haar_unitary(k, rng);
        std::vector<int> targets;
        for (int i = 0; i < k; ++i) targets.push_back(2 * i + 1);
        EXPECT_LT(embed_local(small.matrix(), targets, 9).defect(), 1e-12);
    }
    EXPECT_THROW(embed_local(ComplexMatrix::Identity(2, 2), {1, 1}, 4), ContractViolation);
    EXPECT_THROW(embed_local(ComplexMatrix::Identity(2, 2), {1, 4}, 4), ContractViolation);
    EXPECT_THROW(embed_local(ComplexMatrix::Identity(2, 2), {1}, 4), ContractViolation);
}

TEST(Sigma, n2_swaps_1b_and_2) {
    const ModeLayout l(2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 1.0;
    expected(1, 2) = expected(2, 1) = 1.0;
    EXPECT_TRUE(build_sigma(l).matrix().isApprox(expected));
}

TEST(Sigma, is_a_permutation_realizing_the_wire_map) {
    for (int n = 2; n <= 8; ++n) {
        const ModeLayout l(n);
        const ComplexMatrix s = build_sigma(l).matrix();
        for (int i = 0; i < l.dim(); ++i) {
            EXPECT_NEAR(s.row(i).cwiseAbs().sum(), 1.0, 0.0);
            EXPECT_NEAR(s.col(i).cwiseAbs().sum(), 1.0, 0.0);
        }
        EXPECT_EQ(s(l.path(1), l.path(1)), Complex(1.0));
        EXPECT_EQ(s(l.path(2), l.bar(1)), Complex(1.0));
        for (int k = 2; k <= n - 1; ++k) EXPECT_EQ(s(l.path(k + 1), l.double_bar(k)), Complex(1.0));
        for (int k = 2; k <= n; ++k) {
            EXPECT_EQ(s(l.double_bar(k - 1), l.path(k)), Complex(1.0));
            EXPECT_EQ(s(l.bar(k), l.bar(k)), Complex(1.0));
        }
    }
}

TEST(Sigma, pairs_auxiliary_wires_with_paths_so_it_is_an_involution) {
    // kbb -> k+1 and k+1 -> kbb, so applying the permutation twice restores
    // every wire, for every N.
    for (int n = 2; n <= 8; ++n) {
        const ComplexMatrix s = build_sigma(ModeLayout(n)).matrix();
        EXPECT_TRUE((s * s).isApprox(ComplexMatrix::Identity(s.rows(), s.cols()))) << "N=" << n;
    }
}

TEST(GCompletion, first_column_uniform_and_unitary) {
    for (int n = 2; n <= 10; ++n) {
        for (const auto &g : {GCompletion::gram_schmidt(n), GCompletion::randomized(n, 17)}) {
            EXPECT_EQ(g.size(), n - 1);
            EXPECT_LE(unitarity_defect(g.matrix()), 1e-12);
            for (int r = 0; r < g.size(); ++r) {
                EXPECT_LE(std::abs(g.matrix()(r, 0) - 1.0 / std::sqrt(n - 1.0)), 1e-15);
            }
        }
    }
    EXPECT_EQ(GCompletion::gram_schmidt(2).matrix()(0, 0), Complex(1.0));
}

TEST(GCompletion, randomized_completion_differs_from_gram_schmidt) {
    for (int n = 3; n <= 6; ++n) {
        const ComplexMatrix a = GCompletion::gram_schmidt(n).matrix();
        const ComplexMatrix b = GCompletion::randomized(n, 1234).matrix();
        EXPECT_GT((a - b).cwiseAbs().maxCoeff(), 1e-3);
    }
}

TEST(GCompletion, rejects_invalid_matrices) {
    EXPECT_THROW(GCompletion(ComplexMatrix::Ones(2, 2)), ContractViolation);
    ComplexMatrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    EXPECT_THROW(GCompletion{swap}, ContractViolation);
}

TEST(Stages, single_particle_actions) {
    const int n = 5;
    const double delta = 0.4, alpha = 0.3;
    ProtocolParams p = params(n, delta);
    p.alpha = alpha;
    const ModeLayout l(n);
    const GCompletion g = GCompletion::randomized(n, 99);
    const ProtocolStages st = build_protocol_stages(p, g);
    const double beta = std::sqrt(1 - alpha * alpha), eps = std::sqrt(1 - delta * delta);
    const double inv = 1.0 / std::sqrt(n - 1.0);

    // a1 -> alpha a1 + beta a1b
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(l.dim());
    e(l.path(1)) = alpha;
    e(l.bar(1)) = beta;
    EXPECT_TRUE(image_of(st.local, l.path(1)).isApprox(e));

    // ak -> delta ak + eps akb
    for (int k = 2; k <= n; ++k) {
        e.setZero();
        e(l.path(k)) = delta;
        e(l.bar(k)) = eps;
        EXPECT_TRUE(image_of(st.local, l.path(k)).isApprox(e));
    }

    // G: a1b -> (1bb + 2bb + ... + (N-1)bb) / sqrt(N-1)
    e.setZero();
    for (int k = 1; k <= n - 1; ++k) e(l.double_bar(k)) = inv;
    EXPECT_LT((image_of(st.g, l.bar(1)) - e).cwiseAbs().maxCoeff(), 1e-15);

    // G^-1: kbb -> (1b + conj(gamma_{k,2}) 2bb + ...) / sqrt(N-1)
    const std::vector<int> wires = l.g_wires();
    for (int k = 0; k < n - 1; ++k) {
        const auto img = image_of(st.g_inverse, wires[static_cast<size_t>(k)]);
        EXPECT_LT(std::abs(img(l.bar(1)) - inv), 1e-15);
        for (int j = 1; j < n - 1; ++j) {
            EXPECT_LT(std::abs(img(wires[static_cast<size_t>(j)]) - std::conj(g.matrix()(k, j))), 1e-15);
        }
    }

    // After U, G, V...V and sigma: path 1 -> alpha a1 + beta/sqrt(N-1) (a2 + ... + aN),
    // path k -> delta a(k-1)bb + eps akb.
    const ModeUnitary upto_sigma = st.sigma * st.g * st.local;
    e.setZero();
    e(l.path(1)) = alpha;
    for (int k = 2; k <= n; ++k) e(l.path(k)) = beta * inv;
    EXPECT_LT((image_of(upto_sigma, l.path(1)) - e).cwiseAbs().maxCoeff(), 1e-15);
    for (int k = 2; k <= n; ++k) {
        e.setZero();
        e(l.double_bar(k - 1)) = delta;
        e(l.bar(k)) = eps;
        EXPECT_LT((image_of(upto_sigma, l.path(k)) - e).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(ProtocolUnitary, unitary_for_all_sizes) {
    for (int n = 2; n <= 12; ++n) {
        for (double delta : {0.2, optimal_delta(n), 0.9}) {
            EXPECT_LT(build_protocol_unitary(params(n, delta), GCompletion::gram_schmidt(n)).defect(), 1e-12);
        }
    }
    for (int n = 3; n <= 6; ++n) {
        EXPECT_LT(build_protocol_unitary(params(n, 0.5), GCompletion::randomized(n, 5 + n)).defect(), 1e-12);
    }
}

TEST(ProtocolUnitary, dimension_mismatch) {
    EXPECT_THROW(build_protocol_unitary(params(4, 0.5), GCompletion::gram_schmidt(3)), ContractViolation);
    EXPECT_THROW(build_protocol_unitary(params(4, 1.5), GCompletion::gram_schmidt(4)), ContractViolation);
}

TEST(ProtocolUnitary, zero_delta_leaves_only_the_first_qubit_up) {
    for (int n = 2; n <= 6; ++n) {
        ProtocolParams p = params(n, 0.0);
        p.alpha = 0.5;
        const auto s = run_protocol(p);
        EXPECT_NEAR(s.success_probability, 0.25, 1e-12);
        EXPECT_NEAR(std::abs(s.amplitudes[one_hot_index(n, 1)]), 1.0, 1e-12);
    }
}

TEST(ProtocolUnitary, n2_full_transmission_swaps_the_particles) {
    // Particle 2 stays on path 2 and is routed to 1b; particle 1 survives
    // only through 1b, which is routed to path 2.
    ProtocolParams p = params(2, 1.0);
    p.alpha = 0.5;
    const auto s = run_protocol(p);
    EXPECT_NEAR(s.success_probability, 0.75, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude("01")), 1.0, 1e-12);
}

TEST(ProtocolUnitary, json_export_round_trips) {
    const ModeUnitary u = build_protocol_unitary(params(3, 0.6), GCompletion::randomized(3, 8));
    const auto j = io::unitary_json(u);
    EXPECT_EQ(j.at("dim").get<int>(), 7);
    EXPECT_EQ(j.at("entries").size(), 7u);
    EXPECT_EQ(j.at("entries")[0][0].size(), 2u);
    const ModeUnitary back = io::unitary_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ((back.matrix() - u.matrix()).cwiseAbs().maxCoeff(), 0.0);
}
