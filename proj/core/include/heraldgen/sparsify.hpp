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
#include <string>
#include <vector>

#include "heraldgen/compile.hpp"
#include "heraldgen/fock.hpp"
#include "heraldgen/optics.hpp"
#include "heraldgen/polymul.hpp"
#include "heraldgen/simulate.hpp"

namespace heraldgen {

/// What the reference is compared against. FullOutput uses the whole output
/// state, which keeps its weight outside the photon split and so is not
/// minimal at the starting fabric. ProjectedOutput compares the split
/// projection of the output, which vanishes exactly when the heralded
/// states are reproduced up to a common factor.
enum class FidelityMode { FullOutput, ProjectedOutput };

const char *fidelity_mode_name(FidelityMode m);
FidelityMode parse_fidelity_mode(const std::string &name);

struct SparsifyConfig {
    /// Initial weight of the |sin 2 theta| penalty; cosine-annealed to 0.
    double lambda_reg = 0.05;
    /// Half-width of the uniform perturbation applied to every angle.
    double epsilon = 1e-2;
    /// Rounding tolerance for special angles.
    double tau = 1e-3;
    int max_iters = 1000;
    std::uint64_t seed = 0;
    int restarts = 1;
    /// Adam step size, cosine-annealed to lr / 100.
    double lr = 0.01;
    double fidelity_threshold = kDefaultFidelityThreshold;
    /// Allowed absolute change of each preserved herald probability.
    double preserve_tol = 1e-4;
    int workers = 0;
    std::size_t memory_cap_bytes = std::size_t{8} << 30;
    FidelityMode fidelity_mode = FidelityMode::ProjectedOutput;

    void validate() const;
};

enum class BsFlag { Kept, RoundedTrivial, RoundedSwap };

const char *bs_flag_name(BsFlag f);

/// Heralded target outcome that stage 2 has to preserve.
struct PreservedHerald {
    Occupancy pattern;
    std::size_t target = 0;
    double probability = 0;
};

struct HeraldDelta {
    Occupancy pattern;
    double before = 0;
    double after = 0;
    double fidelity = 0;
};

struct SparsifyResult {
    Fabric fabric;
    int count_before = 0;
    int count_after = 0;
    double fidelity_loss = 0;
    std::vector<HeraldDelta> deltas;
    /// Per layer and beamsplitter.
    std::vector<std::vector<BsFlag>> flags;
    /// False when no restart passed the preservation gate with fewer
    /// generic beamsplitters; the fabric is then the input fabric.
    bool improved = false;
    /// Ancilla modes that no generic beamsplitter touches after compilation.
    std::vector<int> removable_modes;
    int best_restart = -1;
    /// Restarts whose rounded fabric passed the preservation gate,
    /// regardless of their beamsplitter count.
    int preserving_restarts = 0;
    std::vector<double> loss_trace;
};

/// Restricted photon-split simulation plus the projected reference used by
/// the fidelity loss.
class FidelityObjective {
   public:
    /// `reference` holds the amplitudes of the projected reference state.
    FidelityObjective(
        const PureState &reference,
        const ModePartition &partition,
        const Occupancy &input,
        std::size_t memory_cap_bytes,
        FidelityMode mode = FidelityMode::FullOutput);

    /// Bures angle between the state of `u` on the input and the reference.
    double value(const Eigen::MatrixXcd &u) const;
    /// Same, with W such that d angle = 2 Re sum W_ji dU_ji.
    double value_and_grad_u(const Eigen::MatrixXcd &u, Eigen::MatrixXcd &w) const;

   private:
    PolyMulEngine engine_;
    FidelityMode mode_;
    std::vector<Complex> reference_;  // per slice entry, as coefficients
    double reference_norm_ = 0;
};

/// Bures angle between the output of fabric f on `input` and the reference
/// (which only has weight in the partition's photon split).
double fidelity_loss(const Fabric &f, const PureState &reference, const ModePartition &partition, const Occupancy &input);

/// sum over beamsplitters of |sin 2 theta|.
double regularization_penalty(const Fabric &f);

/// Snaps every theta within tau of a multiple of pi/2 exactly onto it.
Fabric round_special(const Fabric &f, double tau);

/// Beamsplitters classified generic at tolerance tau.
int count_nontrivial(const Fabric &f, double tau = kClassifyTolerance);

/// Parameter vector [theta, phi_t, phi_r per beamsplitter in layer order,
/// then the phase layer] and its inverse.
Eigen::VectorXd fabric_parameters(const Fabric &f);
Fabric fabric_from_parameters(const Fabric &layout, const Eigen::VectorXd &params);

/// Gradient of 2 Re sum W_ji dU_ji with respect to fabric_parameters(f).
Eigen::VectorXd fabric_pullback(const Fabric &f, const Eigen::MatrixXcd &w);

/// Heralds of `u` that match a target at `threshold`.
std::vector<PreservedHerald> matched_heralds(
    const TransferMatrix &u,
    const Occupancy &input,
    const ModePartition &partition,
    const std::vector<PureState> &targets,
    double threshold);

/// Ancilla modes of the compiled circuit that no generic beamsplitter touches.
std::vector<int> removable_modes(const CompiledCircuit &c, const ModePartition &partition);

/// Perturb, minimize fidelity loss + lambda(t) * penalty, round, and keep the
/// restart with the fewest generic beamsplitters that preserves every
/// matched herald of f1 (same pattern, probability within preserve_tol,
/// fidelity with the same target at least fidelity_threshold). Returns f1
/// unchanged when no restart beats its count.
SparsifyResult optimize_stage2(
    const Fabric &f1,
    const SparsifyConfig &config,
    const Occupancy &input,
    const ModePartition &partition,
    const std::vector<PureState> &targets);

}  // namespace heraldgen
