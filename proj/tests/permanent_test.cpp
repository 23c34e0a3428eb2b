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

#include "heraldgen/optics.hpp"
#include "heraldgen/permanent.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

using testing::C;

TEST(Permanent, SmallCases) {
    Eigen::MatrixXcd a(2, 2);
    a << 1, 2, 3, 4;
    EXPECT_NEAR(std::abs(permanent(a) - C(10)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd::Identity(5, 5)) - C(1)), 0.0, 1e-12);
    // All-ones n x n has permanent n!.
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd::Ones(6, 6)) - C(720)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd(0, 0)) - C(1)), 0.0, 1e-12);
}

TEST(Permanent, MatchesPermutationSum) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (int t = 0; t < 30; t++) {
        int n = 1 + t % 7;
        Eigen::MatrixXcd a(n, n);
        for (int r = 0; r < n; r++) {
            for (int c = 0; c < n; c++) {
                a(r, c) = C(g(rng), g(rng));
            }
        }
        C want = testing::permutation_sum_permanent(a);
        EXPECT_NEAR(std::abs(permanent(a) - want), 0.0, 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST(AmplitudeOracle, IdentityAndBeamsplitter) {
    auto id = TransferMatrix::identity(3);
    EXPECT_NEAR(std::abs(amplitude_oracle(id, Occupancy{1, 2, 0}, Occupancy{1, 2, 0}) - C(1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amplitude_oracle(id, Occupancy{1, 2, 0}, Occupancy{2, 1, 0})), 0.0, 1e-12);
    auto bs = bs_matrix(BeamsplitterParams{0, 1, std::numbers::pi / 4, 0, 0}, 2);
    EXPECT_NEAR(std::abs(amplitude_oracle(bs, Occupancy{1, 1}, Occupancy{1, 1})), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amplitude_oracle(bs, Occupancy{1, 1}, Occupancy{2, 0}) - C(-1 / std::sqrt(2.0))), 0.0, 1e-12);
}

TEST(AmplitudeOracle, TotalMismatchThrows) {
    auto id = TransferMatrix::identity(2);
    EXPECT_THROW(amplitude_oracle(id, Occupancy{1, 1}, Occupancy{1, 0}), std::invalid_argument);
}

TEST(AmplitudeOracle, MatchesExpansion) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 15; t++) {
        int m = 2 + t % 3;
        auto u = haar_unitary(m, rng);
        auto in = testing::random_occupancy(m, 1 + t % 4, rng);
        for (const auto &[occ, a] : testing::expand_output(u.matrix(), in)) {
            EXPECT_NEAR(std::abs(amplitude_oracle(u, in, Occupancy(occ)) - a), 0.0, 1e-10);
        }
    }
}

}  // namespace
}  // namespace heraldgen
