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

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heraldgen/fock.hpp"

namespace heraldgen {

/// Max-norm of U^dagger U - I.
double unitarity_deviation(const Eigen::MatrixXcd &u);

/// m x m unitary acting on creation operators: a_i^dag -> sum_j a_j^dag U_ji.
class TransferMatrix {
   public:
    static constexpr double kDefaultTolerance = 1e-10;

    TransferMatrix() = default;
    /// Throws std::invalid_argument if `u` is not square or not unitary to `tolerance`.
    explicit TransferMatrix(Eigen::MatrixXcd u, double tolerance = kDefaultTolerance);

    static TransferMatrix identity(int modes);

    int modes() const { return static_cast<int>(u_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return u_; }
    Complex operator()(int row, int col) const { return u_(row, col); }

   private:
    Eigen::MatrixXcd u_;
};

class MemoryBudgetError : public std::runtime_error {
   public:
    MemoryBudgetError(std::size_t required, std::size_t cap);
    std::size_t required_bytes() const { return required_; }

   private:
    std::size_t required_;
};

struct SimOptions {
    std::size_t memory_cap_bytes = std::size_t{8} << 30;
    /// Entries below noise_floor * max|T| are zeroed in returned tensors.
    double noise_floor = 1e-12;
    /// Per-mode maximum occupancy override (box dim = cutoff + 1). Results
    /// are flagged approximate when this is smaller than the exact box.
    std::optional<int> cutoff;
    /// Explicit restricted-box sizes; defaults are the smallest exact ones.
    std::optional<int> signal_dim;
    std::optional<int> ancilla_dim;
};

/// Exact output coefficient tensor over the (n+1)^m box via FFT polynomial
/// multiplication. Entries with total != n are zero.
StateTensor simulate_full(const TransferMatrix &u, const Occupancy &input, const SimOptions &options = {});

/// Output restricted to the partition's photon split. The returned tensor
/// spans the joint signal x ancilla box; only the target slice is populated.
StateTensor simulate_restricted(
    const TransferMatrix &u, const Occupancy &input, const ModePartition &partition, const SimOptions &options = {});

struct HeraldedOutcome {
    Occupancy ancilla_pattern;
    double probability = 0;
    /// Normalized state over the signal modes.
    PureState conditional_state;
};

/// One outcome per ancilla pattern with weight inside the partition's split,
/// sorted by descending probability then descending pattern order.
std::vector<HeraldedOutcome> herald_decompose(const StateTensor &tensor, const ModePartition &partition);

/// Like herald_decompose but over every photon split, for completeness reports.
std::vector<HeraldedOutcome> herald_all_splits(const StateTensor &tensor, int signal_modes);

struct HeraldMatch {
    std::size_t outcome = 0;
    std::size_t target = 0;
    double fidelity = 0;
};

struct SuccessSummary {
    double probability = 0;
    int matched = 0;
    std::vector<HeraldMatch> matches;
};

inline constexpr double kDefaultFidelityThreshold = 0.9999;

/// Sums the probability of outcomes whose best fidelity against any target
/// reaches `threshold`.
SuccessSummary success_probability(
    const std::vector<HeraldedOutcome> &outcomes,
    const std::vector<PureState> &targets,
    double threshold = kDefaultFidelityThreshold);

}  // namespace heraldgen
