// Copyright 2026 The heraldgen Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heraldgen/discover.hpp"
#include "heraldgen/sparsify.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

constexpr double kPi = std::numbers::pi;

PureState output_state(const TransferMatrix &u, const Occupancy &in) {
    return amplitudes_from_tensor(simulate_full(u, in));
}

TEST(Sparsify, PenaltyExamples) {
    auto f = Fabric::identity(3);
    EXPECT_EQ(regularization_penalty(f), 0.0);
    f.layers[0][0].theta = kPi / 2;
    f.layers[1][0].theta = -kPi;
    EXPECT_NEAR(regularization_penalty(f), 0.0, 1e-15);
    f.layers[2][0].theta = kPi / 4;
    EXPECT_NEAR(regularization_penalty(f), 1.0, 1e-15);
    f = Fabric::identity(3);
    f.layers[0][0].theta = kPi / 8;
    f.layers[1][0].theta = kPi / 8;
    EXPECT_NEAR(regularization_penalty(f), std::sqrt(2.0), 1e-15);
}

TEST(Sparsify, RoundSpecial) {
    auto f = Fabric::identity(4);
    f.layers[0][0].theta = 1e-4;
    f.layers[0][1].theta = kPi / 4;
    f.layers[1][0].theta = kPi / 2 - 5e-4;
    f.layers[2][0].theta = -kPi + 2e-4;
    f.layers[2][0].phi_r = 0.3;
    auto r = round_special(f, 1e-3);
    EXPECT_EQ(r.layers[0][0].theta, 0.0);
    EXPECT_EQ(r.layers[0][1].theta, kPi / 4);
    EXPECT_EQ(r.layers[1][0].theta, kPi / 2);
    EXPECT_NEAR(std::abs(std::sin(r.layers[2][0].theta)), 0.0, 1e-15);
    EXPECT_EQ(r.layers[2][0].phi_r, 0.3);
    EXPECT_EQ(count_nontrivial(r), 1);
}

TEST(Sparsify, CountNontrivial) {
    EXPECT_EQ(count_nontrivial(Fabric::identity(6)), 0);
    std::mt19937_64 rng(71);
    for (int m = 3; m <= 7; m++) {
        EXPECT_LE(count_nontrivial(clements_decompose(haar_unitary(m, rng))), m * (m - 1) / 2);
    }
}

TEST(Sparsify, ParameterRoundTrip) {
    std::mt19937_64 rng(72);
    auto f = testing::random_sparse_fabric(5, rng);
    EXPECT_EQ(fabric_from_parameters(f, fabric_parameters(f)), f);
}

TEST(FidelityLoss, BellReferenceValues) {
    TransferMatrix u(bell_reference_matrix());
    Occupancy in{1, 1, 1, 1, 0};
    auto part = ModePartition::make(4, 1, 2, 2);
    auto f1 = clements_decompose(u);
    auto psi = output_state(u, in);
    auto ref = project_photon_split(psi, part);
    // Only the 1/9 herald lies in the split: its norm is 1/3.
    EXPECT_NEAR(fidelity_loss(f1, ref, part, in), std::acos(1.0 / 3), 1e-9);
    auto whole = ModePartition::make(5, 0, 4, 0);
    EXPECT_NEAR(fidelity_loss(f1, psi, whole, in), 0.0, 1e-7);

    FidelityObjective projected(ref, part, in, std::size_t{1} << 30, FidelityMode::ProjectedOutput);
    EXPECT_NEAR(projected.value(fabric_matrix(f1).matrix()), 0.0, 1e-7);
}

TEST(FidelityLoss, FarFabricIsNearlyOrthogonal) {
    std::mt19937_64 rng(73);
    Occupancy in{1, 1, 1, 0, 0, 0};
    auto whole = ModePartition::make(6, 0, 3, 0);
    double sum = 0;
    for (int t = 0; t < 8; t++) {
        auto ref = output_state(haar_unitary(6, rng), in);
        sum += fidelity_loss(clements_decompose(haar_unitary(6, rng)), ref, whole, in);
    }
    EXPECT_GT(sum / 8, 1.2);
}

TEST(FidelityLoss, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(74);
    Occupancy in{1, 1, 1, 0, 0};
    auto part = ModePartition::make(3, 2, 2, 1);
    auto ref = project_photon_split(output_state(haar_unitary(5, rng), in), part);
    for (auto mode : {FidelityMode::FullOutput, FidelityMode::ProjectedOutput}) {
        FidelityObjective obj(ref, part, in, std::size_t{1} << 30, mode);
        auto f = testing::random_sparse_fabric(5, rng);
        auto x = fabric_parameters(f);
        Eigen::MatrixXcd w;
        obj.value_and_grad_u(fabric_matrix(f).matrix(), w);
        Eigen::VectorXd g = fabric_pullback(f, w);
        auto value = [&](const Eigen::VectorXd &p) {
            return obj.value(fabric_matrix(fabric_from_parameters(f, p)).matrix());
        };
        const double h = 1e-6;
        for (Eigen::Index k = 0; k < x.size(); k++) {
            Eigen::VectorXd p = x, q = x;
            p(k) += h;
            q(k) -= h;
            EXPECT_NEAR(g(k), (value(p) - value(q)) / (2 * h), 1e-6) << fidelity_mode_name(mode) << " " << k;
        }
    }
}

TEST(Sparsify, ConfigAndModeNames) {
    SparsifyConfig c;
    EXPECT_NO_THROW(c.validate());
    c.epsilon = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(parse_fidelity_mode("full"), FidelityMode::FullOutput);
    EXPECT_EQ(parse_fidelity_mode("projected"), FidelityMode::ProjectedOutput);
    EXPECT_THROW(parse_fidelity_mode("x"), std::invalid_argument);
    EXPECT_STREQ(bs_flag_name(BsFlag::RoundedSwap), "rounded_swap");
}

TEST(Sparsify, IdentityFabricIsUnchanged) {
    Occupancy in{1, 0, 1, 0, 0};
    auto part = ModePartition::make(4, 1, 2, 0);
    std::vector<Complex> zero{1, 0, 0, 0};
    auto targets = single_target(zero).states;
    SparsifyConfig c;
    c.max_iters = 50;
    c.restarts = 2;
    auto f1 = Fabric::identity(5);
    auto r = optimize_stage2(f1, c, in, part, targets);
    EXPECT_FALSE(r.improved);
    EXPECT_EQ(r.fabric, f1);
    EXPECT_EQ(r.count_before, 0);
    EXPECT_EQ(r.count_after, 0);
    EXPECT_EQ(regularization_penalty(r.fabric), 0.0);
}

TEST(Sparsify, BellReferenceKeepsHeraldWithFiveBeamsplitters) {
    TransferMatrix u(bell_reference_matrix());
    Occupancy in{1, 1, 1, 1, 0};
    auto part = ModePartition::make(4, 1, 2, 2);
    auto targets = pauli_orbit(bell_qubit_state()).states;
    SparsifyConfig c;
    c.max_iters = 300;
    c.restarts = 2;
    c.seed = 5;
    auto r = optimize_stage2(clements_decompose(u), c, in, part, targets);
    EXPECT_LE(r.count_after, 5);
    EXPECT_GT(r.preserving_restarts, 0);
    auto heralds = matched_heralds(fabric_matrix(r.fabric), in, part, targets, 0.9999);
    double p = 0;
    for (const auto &h : heralds) {
        p += h.probability;
    }
    EXPECT_NEAR(p, 1.0 / 9, 1e-4);
}

TEST(Sparsify, SameSeedSameResult) {
    TransferMatrix u(bell_reference_matrix());
    Occupancy in{1, 1, 1, 1, 0};
    auto part = ModePartition::make(4, 1, 2, 2);
    auto targets = pauli_orbit(bell_qubit_state()).states;
    SparsifyConfig c;
    c.max_iters = 60;
    c.restarts = 2;
    c.seed = 9;
    auto f1 = clements_decompose(u);
    c.workers = 1;
    auto a = optimize_stage2(f1, c, in, part, targets);
    c.workers = 2;
    auto b = optimize_stage2(f1, c, in, part, targets);
    EXPECT_EQ(a.fabric, b.fabric);
    EXPECT_EQ(a.loss_trace, b.loss_trace);
}

}  // namespace
}  // namespace heraldgen
