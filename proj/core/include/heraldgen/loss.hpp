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
#include <vector>

#include "heraldgen/fock.hpp"
#include "heraldgen/polymul.hpp"
#include "heraldgen/simulate.hpp"
#include "heraldgen/stabilizer.hpp"

namespace heraldgen {

/// Probability-weighted angle loss
///     L = -sum_A Pr(A) * c * (1 - min_t angle(psi_A, t))^p
/// over the heralded outcomes A of the partition's photon split.
struct LossConfig {
    double c = 1.0;
    int p = 3;
    TargetSet targets;
    ModePartition partition;

    /// Throws unless c > 0, p is a positive odd integer and targets are non-empty.
    void validate() const;
};

struct LossValue {
    double loss = 0;
    /// dL = 2 Re sum_{j,i} grad_u(j, i) dU_ji; only filled on request.
    Eigen::MatrixXcd grad_u;
};

/// Evaluates the loss for transfer matrices on a fixed input. Builds the
/// restricted simulation plan once and reuses it.
class Stage1Objective {
   public:
    Stage1Objective(LossConfig config, Occupancy input, std::size_t memory_cap_bytes = std::size_t{8} << 30);

    const LossConfig &config() const { return config_; }
    const Occupancy &input() const { return engine_.input(); }
    int modes() const { return engine_.modes(); }

    LossValue evaluate(const Eigen::MatrixXcd &u, bool with_gradient) const;

    /// Loss and gradient with respect to the Lie parameters.
    double value_and_gradient(const Eigen::VectorXd &xi, Eigen::VectorXd *grad) const;

   private:
    LossConfig config_;
    PolyMulEngine engine_;
    // Slice entry -> (signal configuration, ancilla configuration).
    std::vector<std::size_t> signal_index_;
    std::vector<std::size_t> ancilla_index_;
    std::size_t signal_count_ = 0;
    std::size_t ancilla_count_ = 0;
    // Dense target vectors over the signal configurations, plus full norms.
    std::vector<Eigen::VectorXcd> targets_;
    std::vector<double> target_norms_;
};

/// One-shot evaluation of the loss.
double stage1_loss(const TransferMatrix &u, const LossConfig &config, const Occupancy &input);

}  // namespace heraldgen
