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
#include <random>
#include <vector>

#include "heraldgen/simulate.hpp"

namespace heraldgen {

/// Two-mode beamsplitter on modes i < j with block
///     [[e^{i phi_t} cos theta, -e^{-i phi_r} sin theta],
///      [e^{i phi_r} sin theta,  e^{-i phi_t} cos theta]].
struct BeamsplitterParams {
    int i = 0;
    int j = 1;
    double theta = 0;
    double phi_t = 0;
    double phi_r = 0;

    bool operator==(const BeamsplitterParams &) const = default;
};

struct PhaseshifterParams {
    int i = 0;
    double phi = 0;

    bool operator==(const PhaseshifterParams &) const = default;
};

/// Brick-layered interferometer with m layers. Layer l (0-based) couples
/// modes (l % 2, l % 2 + 1), (l % 2 + 2, l % 2 + 3), ... The transfer matrix
/// is F_0 F_1 ... F_{m-1} D, where F_l is the product of layer l and D the
/// diagonal phase layer, stored as `output_phases` with one entry per mode.
struct Fabric {
    int m = 0;
    std::vector<std::vector<BeamsplitterParams>> layers;
    std::vector<PhaseshifterParams> output_phases;

    /// All-zero fabric with the standard brick layout.
    static Fabric identity(int m);

    /// Throws std::invalid_argument unless the layout matches identity(m).
    void validate() const;
    std::size_t beamsplitter_count() const;

    bool operator==(const Fabric &) const = default;
};

enum class BsClass { Trivial, SwapEquivalent, Generic };

inline constexpr double kClassifyTolerance = 1e-3;

/// Reduces an angle to (-pi, pi].
double wrap_angle(double angle);

/// Trivial when theta is within tol of a multiple of pi, SWAP-equivalent
/// when within tol of an odd multiple of pi/2, generic otherwise.
BsClass classify_bs(double theta, double tol = kClassifyTolerance);

const char *bs_class_name(BsClass c);

Eigen::Matrix2cd bs_block(double theta, double phi_t, double phi_r);
TransferMatrix bs_matrix(const BeamsplitterParams &p, int m);
TransferMatrix phase_matrix(const PhaseshifterParams &p, int m);
TransferMatrix swap_matrix(int i, int j, int m);
TransferMatrix fabric_matrix(const Fabric &f);

/// Left-multiplies rows (i, j) of `target` by a 2x2 block, in place.
void apply_block_left(Eigen::MatrixXcd &target, int i, int j, const Eigen::Matrix2cd &block);
/// Right-multiplies columns (i, j) of `target` by a 2x2 block, in place.
void apply_block_right(Eigen::MatrixXcd &target, int i, int j, const Eigen::Matrix2cd &block);

/// Max elementwise |a - e^{i g} b| with g chosen to align the
/// largest-magnitude entry of a.
double deviation_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix.
TransferMatrix haar_unitary(int m, std::mt19937_64 &rng);

/// Rectangular decomposition of U into the brick fabric. Each SU(2) factor
/// maps exactly to one beamsplitter via theta = atan2(|beta|, |alpha|),
/// phi_t = arg(alpha), phi_r = arg(beta); the leftover diagonal becomes the
/// phase layer. Reconstruction is exact, without a global phase.
Fabric clements_decompose(const TransferMatrix &u);

}  // namespace heraldgen
