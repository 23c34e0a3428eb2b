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
#include "heraldgen/lie.hpp"
#include "heraldgen/loss.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

LossConfig bell_config(int p) {
    LossConfig cfg;
    cfg.c = 1;
    cfg.p = p;
    cfg.targets = pauli_orbit(bell_qubit_state());
    cfg.partition = ModePartition::make(4, 1, 2, 2);
    return cfg;
}

TEST(Loss, ValidateRejectsBadShapes) {
    auto cfg = bell_config(3);
    cfg.p = 2;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.p = 3;
    cfg.c = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.c = 1;
    cfg.targets.states.clear();
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Loss, BellReferenceGivesMinusOneNinth) {
    TransferMatrix u(bell_reference_matrix());
    EXPECT_NEAR(stage1_loss(u, bell_config(1), Occupancy{1, 1, 1, 1, 0}), -1.0 / 9, 1e-12);
    EXPECT_NEAR(stage1_loss(u, bell_config(3), Occupancy{1, 1, 1, 1, 0}), -1.0 / 9, 1e-12);
}

TEST(Loss, EmptySplitGivesZero) {
    EXPECT_EQ(stage1_loss(TransferMatrix::identity(5), bell_config(1), Occupancy{1, 1, 1, 1, 0}), 0.0);
}

TEST(Loss, OrthogonalHeraldIsPenalized) {
    LossConfig cfg;
    cfg.p = 1;
    std::vector<Complex> one{0, 0, 0, 1};
    cfg.targets = single_target(one);
    cfg.partition = ModePartition::make(4, 1, 2, 0);
    double l = stage1_loss(TransferMatrix::identity(5), cfg, Occupancy{1, 0, 1, 0, 0});
    EXPECT_NEAR(l, -(1 - std::numbers::pi / 2), 1e-12);
    EXPECT_GT(l, 0);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> g(0, 0.6);
    LossConfig cfg;
    std::vector<Complex> plus{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
    cfg.targets = pauli_orbit(plus);
    cfg.partition = ModePartition::make(2, 2, 1, 1);
    for (int t = 0; t < 10; t++) {
        Stage1Objective obj(cfg, testing::random_occupancy(4, 2, rng));
        Eigen::VectorXd xi(15);
        for (auto &v : xi) {
            v = g(rng);
        }
        Eigen::VectorXd grad;
        obj.value_and_gradient(xi, &grad);
        Eigen::VectorXd fd(15);
        const double h = 1e-5;
        for (int a = 0; a < 15; a++) {
            Eigen::VectorXd p = xi, q = xi;
            p(a) += h;
            q(a) -= h;
            fd(a) = (obj.value_and_gradient(p, nullptr) - obj.value_and_gradient(q, nullptr)) / (2 * h);
        }
        EXPECT_LE((grad - fd).norm(), 1e-4 * std::max(fd.norm(), 1e-8));
    }
}

TEST(Loss, ObjectiveAgreesWithOneShot) {
    std::mt19937_64 rng(62);
    auto cfg = bell_config(3);
    Occupancy in{1, 1, 1, 1, 0};
    Stage1Objective obj(cfg, in);
    for (int t = 0; t < 5; t++) {
        auto u = haar_unitary(5, rng);
        EXPECT_NEAR(obj.evaluate(u.matrix(), false).loss, stage1_loss(u, cfg, in), 1e-12);
    }
}

}  // namespace
}  // namespace heraldgen
