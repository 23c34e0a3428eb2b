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

#include "heraldgen/lie.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

using testing::C;
using testing::max_abs_diff;

Eigen::VectorXd random_xi(int m, std::mt19937_64 &rng, double sigma = 0.7) {
    std::normal_distribution<double> g(0, sigma);
    Eigen::VectorXd xi(m * m - 1);
    for (auto &v : xi) {
        v = g(rng);
    }
    return xi;
}

TEST(Lie, PauliGeneratorsForTwoModes) {
    auto gens = su_generators(2);
    ASSERT_EQ(gens.size(), 3u);
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, C(0, -1), C(0, 1), 0;
    z << 1, 0, 0, -1;
    EXPECT_LT(max_abs_diff(gens[0], x), 1e-15);
    EXPECT_LT(max_abs_diff(gens[1], y), 1e-15);
    EXPECT_LT(max_abs_diff(gens[2], z), 1e-15);
    EXPECT_EQ(su_generators(5).size(), 24u);
    EXPECT_THROW(su_generators(1), std::invalid_argument);
}

TEST(Lie, GeneratorsAreOrthogonalHermitianTraceless) {
    auto gens = su_generators(4);
    for (std::size_t a = 0; a < gens.size(); a++) {
        EXPECT_LT(max_abs_diff(gens[a], gens[a].adjoint()), 1e-15);
        EXPECT_NEAR(std::abs(gens[a].trace()), 0.0, 1e-14);
        for (std::size_t b = 0; b < gens.size(); b++) {
            EXPECT_NEAR(std::abs((gens[a] * gens[b]).trace() - C(a == b ? 2.0 : 0.0)), 0.0, 1e-13);
        }
    }
}

TEST(Lie, ParamCount) {
    EXPECT_EQ(modes_for_param_count(24), 5);
    EXPECT_THROW(modes_for_param_count(10), std::invalid_argument);
}

TEST(Lie, UnitaryExamples) {
    EXPECT_LT(max_abs_diff(unitary_from_params(Eigen::VectorXd::Zero(8)).matrix(), Eigen::MatrixXcd::Identity(3, 3)), 1e-15);
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(3);
    xi(0) = std::numbers::pi / 2;
    Eigen::Matrix2cd ix;
    ix << 0, C(0, 1), C(0, 1), 0;
    EXPECT_LT(max_abs_diff(unitary_from_params(xi).matrix(), ix), 1e-14);
}

TEST(Lie, MatchesSeriesExponential) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 10; t++) {
        int m = 2 + t % 5;
        auto xi = random_xi(m, rng);
        Eigen::MatrixXcd h = C(0, 1) * lie_hamiltonian(xi);
        // Scaling and squaring with a Taylor series.
        Eigen::MatrixXcd small = h / 1024.0, term = Eigen::MatrixXcd::Identity(m, m), acc = term;
        for (int k = 1; k < 20; k++) {
            term = term * small / static_cast<double>(k);
            acc += term;
        }
        for (int k = 0; k < 10; k++) {
            acc = acc * acc;
        }
        auto u = unitary_from_params(xi).matrix();
        EXPECT_LT(max_abs_diff(u, acc), 1e-10);
        EXPECT_LT(unitarity_deviation(u), 1e-12);
        EXPECT_NEAR(std::abs(u.determinant() - C(1)), 0.0, 1e-10);
    }
}

// L = 2 Re sum W_ji U_ji for a fixed random W, differentiated by central differences.
TEST(Lie, PullbackMatchesFiniteDifferences) {
    std::mt19937_64 rng(52);
    std::normal_distribution<double> g;
    for (int t = 0; t < 10; t++) {
        int m = 2 + t % 4;
        auto xi = random_xi(m, rng);
        Eigen::MatrixXcd w(m, m);
        for (int r = 0; r < m; r++) {
            for (int c = 0; c < m; c++) {
                w(r, c) = C(g(rng), g(rng));
            }
        }
        auto value = [&](const Eigen::VectorXd &x) {
            return 2 * w.cwiseProduct(unitary_from_params(x).matrix()).sum().real();
        };
        auto grad = LieExponential(xi).pullback(w);
        const double h = 1e-6;
        for (Eigen::Index a = 0; a < xi.size(); a++) {
            Eigen::VectorXd p = xi, q = xi;
            p(a) += h;
            q(a) -= h;
            double fd = (value(p) - value(q)) / (2 * h);
            EXPECT_NEAR(grad(a), fd, 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(Lie, DegenerateSpectrumIsHandled) {
    // xi = 0 has a fully degenerate spectrum.
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(3, 3);
    w(0, 1) = 1;
    auto grad = LieExponential(Eigen::VectorXd::Zero(8)).pullback(w);
    EXPECT_TRUE(grad.allFinite());
    // dU/dxi_a at 0 is i T_a, so dL/dxi_a = 2 Re(i (T_a)_{01}).
    auto gens = su_generators(3);
    for (std::size_t a = 0; a < gens.size(); a++) {
        EXPECT_NEAR(grad(a), 2 * (C(0, 1) * gens[a](0, 1)).real(), 1e-12);
    }
}

}  // namespace
}  // namespace heraldgen
