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
#include <span>
#include <vector>

#include "heraldgen/fock.hpp"

namespace heraldgen {

/// Contiguous run of modes sharing a per-mode box size and a target photon
/// total for the block.
struct ModeBlock {
    int first_mode = 0;
    int modes = 0;
    int dim = 1;
    int target_photons = 0;
};

/// One populated position of the output slice.
struct SliceEntry {
    std::size_t flat = 0;
    /// Index into the per-block configuration lists, one per block.
    std::vector<std::size_t> config;
    /// sqrt(prod n_i!) at this position.
    double normalization = 1;
};

/// FFT polynomial multiplication of the transformed creation operators
///
///     T = IFFT[ prod_i FFT[T_i]^{n_i} ] / sqrt(prod_i n_i!)
///
/// over a box split into mode blocks. The spectrum of each factor tensor is
/// assembled from per-block FFTs as a sum over blocks, and only positions
/// whose per-block totals equal the block targets are read back. Because
/// circular wrap-around always lowers the apparent total of a block, those
/// positions are exact whenever every block dim exceeds its target.
///
/// The engine also provides the adjoint (reverse-mode) map from a cotangent
/// on the slice to the cotangent of the transfer matrix.
class PolyMulEngine {
   public:
    PolyMulEngine(Occupancy input, std::vector<ModeBlock> blocks, std::size_t memory_cap_bytes);

    int modes() const { return modes_; }
    const Occupancy &input() const { return input_; }
    const std::vector<int> &dims() const { return dims_; }
    const std::vector<ModeBlock> &blocks() const { return blocks_; }
    std::size_t grid_size() const { return grid_size_; }
    /// True when some block dim is too small to hold its target photon count.
    bool truncated() const { return truncated_; }

    /// Per-block occupancy lists (descending order, restricted to the box).
    const std::vector<std::vector<Occupancy>> &block_configs() const { return block_configs_; }
    const std::vector<SliceEntry> &slice() const { return slice_; }

    /// Bytes needed for one evaluation.
    std::size_t required_bytes() const;

    /// Polynomial coefficients T at each slice entry.
    std::vector<Complex> evaluate(const Eigen::MatrixXcd &u) const;

    /// Given G_s = dL/d conj(T_s) on the slice, returns W with
    /// dL = 2 Re sum_{j,i} W_ji dU_ji.
    Eigen::MatrixXcd pullback(const Eigen::MatrixXcd &u, std::span<const Complex> cotangent) const;

   private:
    std::vector<std::vector<Complex>> block_spectra(const Eigen::MatrixXcd &u) const;

    int modes_ = 0;
    Occupancy input_;
    std::vector<int> occupied_;
    std::vector<ModeBlock> blocks_;
    std::vector<int> dims_;
    std::vector<std::size_t> block_sizes_;
    std::size_t grid_size_ = 1;
    bool truncated_ = false;
    double input_normalization_ = 1;
    std::vector<std::vector<Occupancy>> block_configs_;
    std::vector<SliceEntry> slice_;
};

}  // namespace heraldgen
