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


#include "heraldgen/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "heraldgen/lie.hpp"

namespace heraldgen {

namespace {

std::vector<ModeBlock> partition_blocks(const ModePartition &part) {
    return {
        ModeBlock{0, part.signal_modes, part.signal_photons + 1, part.signal_photons},
        ModeBlock{part.signal_modes, part.ancilla_modes, part.ancilla_photons + 1, part.ancilla_photons}};
}

// Below this probability an outcome carries no usable direction.
constexpr double kNegligibleProbability = 1e-30;

}  // namespace

void LossConfig::validate() const {
    if (!(c > 0) || !std::isfinite(c)) {
        throw std::invalid_argument("Loss scale c must be positive.");
    }
    if (p < 1 || p % 2 == 0) {
        throw std::invalid_argument("Loss power p must be a positive odd integer.");
    }
    if (targets.states.empty()) {
        throw std::invalid_argument("Loss target set is empty.");
    }
    for (const auto &t : targets.states) {
        if (static_cast<int>(t.modes()) != partition.signal_modes) {
            throw std::invalid_argument("Target state mode count differs from the signal modes.");
        }
        if (!(t.norm2() > 0)) {
            throw std::invalid_argument("Target state has zero norm.");
        }
    }
}

Stage1Objective::Stage1Objective(LossConfig config, Occupancy input, std::size_t memory_cap_bytes)
    : config_(std::move(config)),
      engine_(
          [&]() -> Occupancy {
              config_.validate();
              if (static_cast<int>(input.modes()) != config_.partition.modes() ||
                  input.total() != config_.partition.photons()) {
                  throw std::invalid_argument("Input occupancy does not match the partition.");
              }
              return input;
          }(),
          partition_blocks(config_.partition),
          memory_cap_bytes) {
    const auto &part = config_.partition;
    // The engine drops empty blocks; map slice entries back to the two sides.
    bool has_signal = part.signal_modes > 0;
    bool has_ancilla = part.ancilla_modes > 0;
    std::vector<Occupancy> signal_configs = has_signal ? engine_.block_configs().front()
                                                       : std::vector<Occupancy>{Occupancy()};
    std::size_t ancilla_block = has_signal ? 1 : 0;
    signal_count_ = signal_configs.size();
    ancilla_count_ = has_ancilla ? engine_.block_configs()[ancilla_block].size() : 1;
    for (const auto &e : engine_.slice()) {
        signal_index_.push_back(has_signal ? e.config[0] : 0);
        ancilla_index_.push_back(has_ancilla ? e.config[ancilla_block] : 0);
    }
    for (const auto &t : config_.targets.states) {
        Eigen::VectorXcd dense(signal_count_);
        for (std::size_t s = 0; s < signal_count_; s++) {
            dense(s) = t.amplitude(signal_configs[s]);
        }
        targets_.push_back(std::move(dense));
        target_norms_.push_back(std::sqrt(t.norm2()));
    }
}

LossValue Stage1Objective::evaluate(const Eigen::MatrixXcd &u, bool with_gradient) const {
    const auto coeffs = engine_.evaluate(u);
    const auto &slice = engine_.slice();
    // Unnormalized conditional vectors v_A over signal configurations.
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(signal_count_, ancilla_count_);
    for (std::size_t s = 0; s < slice.size(); s++) {
        v(signal_index_[s], ancilla_index_[s]) = coeffs[s] * slice[s].normalization;
    }
    const double c = config_.c;
    const int p = config_.p;
    LossValue out;
    Eigen::MatrixXcd gv = Eigen::MatrixXcd::Zero(signal_count_, ancilla_count_);
    for (std::size_t a = 0; a < ancilla_count_; a++) {
        Eigen::VectorXcd va = v.col(static_cast<Eigen::Index>(a));
        double prob = va.squaredNorm();
        if (prob < kNegligibleProbability) {
            continue;
        }
        double vnorm = std::sqrt(prob);
        // Closest target (largest overlap ratio); first wins ties.
        std::size_t best = 0;
        double best_r = -1;
        Complex best_o{};
        for (std::size_t t = 0; t < targets_.size(); t++) {
            Complex o = targets_[t].dot(va);  // conjugates the target
            double r = std::abs(o) / (target_norms_[t] * vnorm);
            if (r > best_r) {
                best_r = r;
                best = t;
                best_o = o;
            }
        }
        double r = std::min(best_r, 1.0);
        double angle = std::acos(r);
        double g = c * std::pow(1.0 - angle, p);
        out.loss -= prob * g;
        if (!with_gradient) {
            continue;
        }
        // dL/d conj(v) = -(g v + P g'(angle) dangle/dr dr/d conj(v)).
        double dg = -c * p * std::pow(1.0 - angle, p - 1);
        double one_minus = 1.0 - r * r;
        double dangle_dr = one_minus > 1e-14 ? -1.0 / std::sqrt(one_minus) : 0.0;
        Eigen::VectorXcd dr = -r / (2.0 * prob) * va;
        if (std::abs(best_o) > 0) {
            dr += best_o / (2.0 * std::abs(best_o) * target_norms_[best] * vnorm) * targets_[best];
        }
        gv.col(static_cast<Eigen::Index>(a)) = -(g * va + prob * dg * dangle_dr * dr);
    }
    if (with_gradient) {
        std::vector<Complex> cot(slice.size());
        for (std::size_t s = 0; s < slice.size(); s++) {
            cot[s] = gv(signal_index_[s], ancilla_index_[s]) * slice[s].normalization;
        }
        out.grad_u = engine_.pullback(u, cot);
    }
    return out;
}

double Stage1Objective::value_and_gradient(const Eigen::VectorXd &xi, Eigen::VectorXd *grad) const {
    LieExponential lie(xi);
    if (lie.modes() != modes()) {
        throw std::invalid_argument("Lie parameter count does not match the mode count.");
    }
    LossValue val = evaluate(lie.unitary(), grad != nullptr);
    if (!std::isfinite(val.loss)) {
        throw std::runtime_error("Stage-1 loss is not finite.");
    }
    if (grad != nullptr) {
        *grad = lie.pullback(val.grad_u);
    }
    return val.loss;
}

double stage1_loss(const TransferMatrix &u, const LossConfig &config, const Occupancy &input) {
    return Stage1Objective(config, input).evaluate(u.matrix(), false).loss;
}

}  // namespace heraldgen
