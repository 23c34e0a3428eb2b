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
#include <cstdint>
#include <vector>

#include "heraldgen/loss.hpp"
#include "heraldgen/simulate.hpp"

namespace heraldgen {

struct OptimConfig {
    int max_iters = 1000;
    int restarts = 1;
    std::uint64_t seed = 0;
    double peak_lr = 0.1;
    double warmup_fraction = 0.3;
    /// Stop once the best loss improves by less than plateau_tol over this many steps.
    int patience = 50;
    double plateau_tol = 1e-9;
    /// Standard deviation of the Gaussian initial Lie parameters.
    double init_sigma = 0.5;
    double fidelity_threshold = kDefaultFidelityThreshold;
    /// Worker threads for restarts; 0 picks the hardware concurrency.
    int workers = 0;
    std::size_t memory_cap_bytes = std::size_t{8} << 30;

    void validate() const;
};

struct RestartSummary {
    int index = 0;
    std::uint64_t seed = 0;
    double initial_loss = 0;
    double best_loss = 0;
    int iterations = 0;
    double success_probability = 0;
    int matched = 0;
};

struct DiscoveryResult {
    Eigen::VectorXd xi;
    TransferMatrix u;
    std::vector<HeraldedOutcome> outcomes;
    SuccessSummary success;
    std::vector<double> loss_trace;
    int best_restart = 0;
    std::uint64_t seed = 0;
    std::vector<RestartSummary> restarts;
};

/// Recomputes heralds and success probability of `u` from scratch.
void evaluate_discovery(
    const TransferMatrix &u,
    const LossConfig &loss,
    const Occupancy &input,
    double fidelity_threshold,
    std::size_t memory_cap_bytes,
    std::vector<HeraldedOutcome> &outcomes,
    SuccessSummary &success);

/// Multi-restart Adam minimization of the stage-1 loss over the Lie
/// parameters. Restart r uses seed + r; the restart with the highest
/// recomputed success probability wins (lowest index on ties).
DiscoveryResult optimize_stage1(const OptimConfig &config, const LossConfig &loss, const Occupancy &input);

/// Transfer matrix of the five-mode heralded Bell-pair generator on input
/// (1,1,1,1,0); heralding two photons in the last mode gives probability 1/9.
Eigen::MatrixXcd bell_reference_matrix();

/// (|00> - |11>) / sqrt(2).
std::vector<Complex> bell_qubit_state();

}  // namespace heraldgen
