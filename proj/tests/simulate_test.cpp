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
#include "heraldgen/optics.hpp"
#include "heraldgen/permanent.hpp"
#include "heraldgen/simulate.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

using testing::C;

TransferMatrix balanced_bs() {
    return bs_matrix(BeamsplitterParams{0, 1, std::numbers::pi / 4, 0, 0}, 2);
}

TEST(TransferMatrix, RejectsNonUnitary) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3);
    a(0, 1) = 0.1;
    EXPECT_THROW(TransferMatrix{a}, std::invalid_argument);
    EXPECT_THROW(TransferMatrix{Eigen::MatrixXcd::Identity(2, 3)}, std::invalid_argument);
    EXPECT_NO_THROW(TransferMatrix(a, 0.2));
}

TEST(SimulateFull, HongOuMandel) {
    auto t = simulate_full(balanced_bs(), Occupancy{1, 1});
    auto amps = amplitudes_from_tensor(t);
    EXPECT_NEAR(std::abs(amps.amplitude(Occupancy{1, 1})), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps.amplitude(Occupancy{2, 0}) - C(-1 / std::sqrt(2.0))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps.amplitude(Occupancy{0, 2}) - C(1 / std::sqrt(2.0))), 0.0, 1e-12);
}

TEST(SimulateFull, IdentityLeavesInputAlone) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; t++) {
        int m = 1 + t % 5;
        auto in = testing::random_occupancy(m, 1 + t % 4, rng);
        auto amps = amplitudes_from_tensor(simulate_full(TransferMatrix::identity(m), in));
        ASSERT_EQ(amps.size(), 1u);
        EXPECT_NEAR(std::abs(amps.amplitude(in) - C(1)), 0.0, 1e-12);
    }
}

TEST(SimulateFull, BellGeneratorQuarticTerm) {
    TransferMatrix u(bell_reference_matrix());
    auto t = simulate_full(u, Occupancy{1, 1, 1, 1, 0});
    EXPECT_NEAR(std::abs(t.at(Occupancy{0, 0, 0, 0, 4}) - C(0, 1.0 / 36)), 0.0, 1e-12);
    auto amps = amplitudes_from_tensor(t);
    EXPECT_NEAR(std::abs(amps.amplitude(Occupancy{0, 0, 0, 0, 4}) - C(0, std::sqrt(24.0) / 36)), 0.0, 1e-12);
}

TEST(SimulateFull, MatchesPermanentOracle) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; t++) {
        int m = 1 + t % 6, n = 1 + t % 4;
        auto u = haar_unitary(m, rng);
        auto in = testing::random_occupancy(m, n, rng);
        auto amps = amplitudes_from_tensor(simulate_full(u, in));
        for (const auto &out : enumerate_occupancies(m, n)) {
            EXPECT_NEAR(std::abs(amps.amplitude(out) - amplitude_oracle(u, in, out)), 0.0, 1e-10);
        }
    }
}

TEST(SimulateFull, MatchesMonomialExpansion) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; t++) {
        int m = 2 + t % 4, n = 1 + t % 4;
        auto u = haar_unitary(m, rng);
        auto in = testing::random_occupancy(m, n, rng);
        auto amps = amplitudes_from_tensor(simulate_full(u, in));
        for (const auto &[occ, a] : testing::expand_output(u.matrix(), in)) {
            EXPECT_NEAR(std::abs(amps.amplitude(Occupancy(occ)) - a), 0.0, 1e-10);
        }
    }
}

TEST(SimulateFull, ConservesNormAndPhotonNumber) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; t++) {
        int m = 2 + t % 5, n = 1 + t % 4;
        auto u = haar_unitary(m, rng);
        auto in = testing::random_occupancy(m, n, rng);
        SimOptions opt;
        opt.noise_floor = 0;
        auto tensor = simulate_full(u, in, opt);
        for (std::size_t f = 0; f < tensor.size(); f++) {
            auto occ = tensor.occupancy_at(f);
            if (occ.total() != n) {
                EXPECT_LT(std::abs(tensor.data()[f]), 1e-10);
            }
        }
        EXPECT_NEAR(amplitudes_from_tensor(tensor).norm2(), 1.0, 1e-10);
    }
}

TEST(SimulateFull, PermutationEquivariance) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; t++) {
        int m = 3 + t % 3;
        auto u = haar_unitary(m, rng);
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
        for (int j = 0; j < m; j++) {
            p(perm[j], j) = 1;
        }
        auto in = testing::random_occupancy(m, 3, rng);
        auto a = amplitudes_from_tensor(simulate_full(u, in));
        auto b = amplitudes_from_tensor(simulate_full(TransferMatrix(p * u.matrix()), in));
        for (const auto &[occ, amp] : a.amplitudes()) {
            std::vector<int> moved(m);
            for (int j = 0; j < m; j++) {
                moved[perm[j]] = occ[j];
            }
            EXPECT_NEAR(std::abs(b.amplitude(Occupancy(moved)) - amp), 0.0, 1e-10);
        }
    }
}

TEST(SimulateFull, MemoryCapNamesBytes) {
    SimOptions opt;
    opt.memory_cap_bytes = 1000;
    try {
        simulate_full(TransferMatrix::identity(6), Occupancy{1, 1, 1, 1, 0, 0}, opt);
        FAIL() << "expected a memory error";
    } catch (const MemoryBudgetError &e) {
        EXPECT_GT(e.required_bytes(), 1000u);
        EXPECT_NE(std::string(e.what()).find(std::to_string(e.required_bytes())), std::string::npos);
    }
}

TEST(SimulateRestricted, MatchesFullSlice) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; t++) {
        int m = 4 + t % 3, n = 2 + t % 3;
        int ms = m / 2, ns = n / 2;
        auto part = ModePartition::make(ms, m - ms, ns, n - ns);
        auto u = haar_unitary(m, rng);
        auto in = testing::random_occupancy(m, n, rng);
        auto full = simulate_full(u, in);
        auto res = simulate_restricted(u, in, part);
        for (const auto &s : enumerate_occupancies(ms, ns)) {
            for (const auto &a : enumerate_occupancies(m - ms, n - ns)) {
                auto occ = s.concat(a);
                EXPECT_NEAR(std::abs(res.at(occ) - full.at(occ)), 0.0, 1e-10);
            }
        }
    }
}

TEST(SimulateRestricted, BellSplitMatchesFull) {
    TransferMatrix u(bell_reference_matrix());
    Occupancy in{1, 1, 1, 1, 0};
    auto part = ModePartition::make(4, 1, 2, 2);
    auto full = simulate_full(u, in);
    auto res = simulate_restricted(u, in, part);
    for (const auto &s : enumerate_occupancies(4, 2)) {
        auto occ = s.concat(Occupancy{2});
        EXPECT_NEAR(std::abs(res.at(occ) - full.at(occ)), 0.0, 1e-12);
    }
}

TEST(SimulateRestricted, EmptyAncillaEqualsFull) {
    std::mt19937_64 rng(9);
    auto u = haar_unitary(4, rng);
    Occupancy in{2, 1, 0, 0};
    auto full = amplitudes_from_tensor(simulate_full(u, in));
    auto res = amplitudes_from_tensor(simulate_restricted(u, in, ModePartition::make(4, 0, 3, 0)));
    for (const auto &[occ, a] : full.amplitudes()) {
        EXPECT_NEAR(std::abs(res.amplitude(occ) - a), 0.0, 1e-12);
    }
}

TEST(SimulateRestricted, BoxTooSmallThrows) {
    std::mt19937_64 rng(10);
    auto u = haar_unitary(4, rng);
    SimOptions opt;
    opt.signal_dim = 2;
    EXPECT_THROW(
        simulate_restricted(u, Occupancy{1, 1, 1, 1}, ModePartition::make(2, 2, 2, 2), opt), std::invalid_argument);
}

TEST(SimulateRestricted, CutoffIsFlaggedApproximate) {
    TransferMatrix u(bell_reference_matrix());
    SimOptions opt;
    opt.cutoff = 1;
    auto t = simulate_restricted(u, Occupancy{1, 1, 1, 1, 0}, ModePartition::make(4, 1, 2, 2), opt);
    EXPECT_TRUE(t.approximate);
    auto exact = simulate_restricted(u, Occupancy{1, 1, 1, 1, 0}, ModePartition::make(4, 1, 2, 2));
    EXPECT_FALSE(exact.approximate);
}

TEST(Herald, BellOutcome) {
    TransferMatrix u(bell_reference_matrix());
    auto part = ModePartition::make(4, 1, 2, 2);
    auto outs = herald_decompose(simulate_restricted(u, Occupancy{1, 1, 1, 1, 0}, part), part);
    ASSERT_EQ(outs.size(), 1u);
    EXPECT_EQ(outs[0].ancilla_pattern, Occupancy{2});
    EXPECT_NEAR(outs[0].probability, 1.0 / 9, 1e-12);
    PureState want(4);
    want.set(Occupancy{1, 0, 1, 0}, 1 / std::sqrt(2.0));
    want.set(Occupancy{0, 1, 0, 1}, -1 / std::sqrt(2.0));
    EXPECT_NEAR(fidelity(outs[0].conditional_state, want), 1.0, 1e-12);
    EXPECT_NEAR(outs[0].conditional_state.norm2(), 1.0, 1e-12);

    auto bell = dual_rail_encode(bell_qubit_state());
    auto summary = success_probability(outs, {bell});
    EXPECT_NEAR(summary.probability, 1.0 / 9, 1e-12);
    EXPECT_EQ(summary.matched, 1);
}

TEST(Herald, ProductStateGivesOneOutcome) {
    PureState s(3);
    s.set(Occupancy{1, 0, 2}, C(0.6, 0));
    s.set(Occupancy{0, 1, 2}, C(0, 0.8));
    auto part = ModePartition::make(2, 1, 1, 2);
    auto outs = herald_decompose(tensor_from_amplitudes(s, {2, 2, 3}), part);
    ASSERT_EQ(outs.size(), 1u);
    EXPECT_NEAR(outs[0].probability, 1.0, 1e-12);
}

TEST(Herald, EmptySliceGivesNothing) {
    StateTensor t({2, 2, 3});
    EXPECT_TRUE(herald_decompose(t, ModePartition::make(2, 1, 1, 2)).empty());
}

TEST(Herald, AllSplitsAreComplete) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 5; t++) {
        auto u = haar_unitary(6, rng);
        auto in = testing::random_occupancy(6, 3, rng);
        auto outs = herald_all_splits(simulate_full(u, in), 3);
        double total = 0;
        for (std::size_t k = 0; k < outs.size(); k++) {
            total += outs[k].probability;
            EXPECT_NEAR(outs[k].conditional_state.norm2(), 1.0, 1e-10);
            if (k > 0) {
                EXPECT_GE(outs[k - 1].probability, outs[k].probability);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(SuccessProbability, NoMatchesAndEmptyTargets) {
    HeraldedOutcome o;
    o.ancilla_pattern = Occupancy{1};
    o.probability = 0.5;
    o.conditional_state = PureState(2);
    o.conditional_state.set(Occupancy{1, 0}, 1);
    PureState t(2);
    t.set(Occupancy{0, 1}, 1);
    auto s = success_probability({o}, {t});
    EXPECT_EQ(s.matched, 0);
    EXPECT_EQ(s.probability, 0.0);
    EXPECT_THROW(success_probability({o}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace heraldgen
