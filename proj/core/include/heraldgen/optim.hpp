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
#include <vector>

namespace heraldgen {

/// Adam first-order optimizer.
class Adam {
   public:
    explicit Adam(Eigen::Index size, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

    /// x <- x - lr * mhat / (sqrt(vhat) + eps).
    void step(Eigen::VectorXd &x, const Eigen::VectorXd &grad, double lr);

   private:
    double beta1_, beta2_, eps_;
    Eigen::VectorXd m_, v_;
    int t_ = 0;
};

inline constexpr double kOneCycleDivFactor = 25.0;
inline constexpr double kOneCycleFinalDiv = 1e4;

/// One-cycle schedule: cosine warmup from peak / div_factor to peak over the
/// first warmup_fraction of the run, then cosine decay to peak / final_div.
double one_cycle_lr(
    int iter, int total, double peak, double warmup_fraction, double div_factor = kOneCycleDivFactor,
    double final_div = kOneCycleFinalDiv);

/// Cosine annealing from `start` at iter 0 to `end` at iter total - 1.
double cosine_anneal(int iter, int total, double start, double end);

/// True when the best loss improved by less than `tol` over the last
/// `patience` iterations. `best_history[t]` is the best loss up to step t.
bool plateaued(const std::vector<double> &best_history, int patience, double tol);

}  // namespace heraldgen
