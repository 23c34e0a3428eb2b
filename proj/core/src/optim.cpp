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


#include "heraldgen/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heraldgen {

Adam::Adam(Eigen::Index size, double beta1, double beta2, double eps)
    : beta1_(beta1), beta2_(beta2), eps_(eps), m_(Eigen::VectorXd::Zero(size)), v_(Eigen::VectorXd::Zero(size)) {
}

void Adam::step(Eigen::VectorXd &x, const Eigen::VectorXd &grad, double lr) {
    t_++;
    m_ = beta1_ * m_ + (1 - beta1_) * grad;
    v_ = beta2_ * v_ + (1 - beta2_) * grad.cwiseProduct(grad);
    double c1 = 1 - std::pow(beta1_, t_);
    double c2 = 1 - std::pow(beta2_, t_);
    for (Eigen::Index k = 0; k < x.size(); k++) {
        x(k) -= lr * (m_(k) / c1) / (std::sqrt(v_(k) / c2) + eps_);
    }
}

double one_cycle_lr(int iter, int total, double peak, double warmup_fraction, double div_factor, double final_div) {
    double initial = peak / div_factor;
    double final_lr = peak / final_div;
    int warm = static_cast<int>(std::lround(warmup_fraction * total));
    if (iter < warm) {
        double frac = static_cast<double>(iter) / warm;
        return initial + (peak - initial) * 0.5 * (1 - std::cos(std::numbers::pi * frac));
    }
    int rest = total - warm;
    double frac = rest > 1 ? static_cast<double>(iter - warm) / (rest - 1) : 1.0;
    frac = std::min(frac, 1.0);
    return final_lr + (peak - final_lr) * 0.5 * (1 + std::cos(std::numbers::pi * frac));
}

double cosine_anneal(int iter, int total, double start, double end) {
    double frac = total > 1 ? static_cast<double>(iter) / (total - 1) : 1.0;
    frac = std::clamp(frac, 0.0, 1.0);
    return end + (start - end) * 0.5 * (1 + std::cos(std::numbers::pi * frac));
}

bool plateaued(const std::vector<double> &best_history, int patience, double tol) {
    auto t = best_history.size();
    if (patience < 1 || t <= static_cast<std::size_t>(patience)) {
        return false;
    }
    return best_history[t - 1 - patience] - best_history[t - 1] < tol;
}

}  // namespace heraldgen
