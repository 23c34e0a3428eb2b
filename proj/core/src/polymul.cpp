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

#include "heraldgen/polymul.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heraldgen/fft.hpp"
#include "heraldgen/simulate.hpp"

namespace heraldgen {

namespace {

Complex ipow(Complex base, int exponent) {
    Complex out{1.0, 0.0};
    for (int k = 0; k < exponent; k++) {
        out *= base;
    }
    return out;
}

std::size_t checked_pow(std::size_t base, int exponent) {
    std::size_t out = 1;
    for (int k = 0; k < exponent; k++) {
        if (out > std::numeric_limits<std::size_t>::max() / base) {
            return std::numeric_limits<std::size_t>::max();
        }
        out *= base;
    }
    return out;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
        return std::numeric_limits<std::size_t>::max();
    }
    return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
    return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

// Row-major flat index of `occ` inside a block of equal-size axes.
std::size_t block_flat(const Occupancy &occ, int dim) {
    std::size_t idx = 0;
    for (int c : occ.counts()) {
        idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c);
    }
    return idx;
}

}  // namespace

PolyMulEngine::PolyMulEngine(Occupancy input, std::vector<ModeBlock> blocks, std::size_t memory_cap_bytes)
    : modes_(static_cast<int>(input.modes())), input_(std::move(input)) {
    int next = 0;
    for (const auto &b : blocks) {
        if (b.first_mode != next || b.modes < 0 || b.dim < 1 || b.target_photons < 0) {
            throw std::invalid_argument("PolyMulEngine: blocks must be contiguous, in order, with dim >= 1.");
        }
        next += b.modes;
        if (b.modes > 0) {
            blocks_.push_back(b);
        } else if (b.target_photons > 0) {
            throw std::invalid_argument("PolyMulEngine: an empty block cannot hold photons.");
        }
    }
    if (next != modes_ || modes_ < 1) {
        throw std::invalid_argument("PolyMulEngine: blocks must cover every mode of the input.");
    }
    int target_total = 0;
    for (const auto &b : blocks_) {
        target_total += b.target_photons;
    }
    if (target_total != input_.total()) {
        throw std::invalid_argument("PolyMulEngine: block targets must add up to the input photon number.");
    }

    input_normalization_ = fock_normalization(input_);
    for (int i = 0; i < modes_; i++) {
        if (input_[i] > 0) {
            occupied_.push_back(i);
        }
    }
    for (const auto &b : blocks_) {
        for (int k = 0; k < b.modes; k++) {
            dims_.push_back(b.dim);
        }
        std::size_t bs = checked_pow(static_cast<std::size_t>(b.dim), b.modes);
        block_sizes_.push_back(bs);
        grid_size_ = saturating_mul(grid_size_, bs);
    }

    std::size_t need = required_bytes();
    if (need > memory_cap_bytes) {
        throw MemoryBudgetError(need, memory_cap_bytes);
    }

    for (const auto &b : blocks_) {
        std::vector<Occupancy> kept;
        for (auto &occ : enumerate_occupancies(b.modes, b.target_photons)) {
            bool fits = true;
            for (int c : occ.counts()) {
                fits = fits && c < b.dim;
            }
            if (fits) {
                kept.push_back(std::move(occ));
            } else {
                truncated_ = true;
            }
        }
        block_configs_.push_back(std::move(kept));
    }

    std::vector<std::size_t> strides(blocks_.size());
    std::size_t stride = 1;
    for (std::size_t b = blocks_.size(); b-- > 0;) {
        strides[b] = stride;
        stride *= block_sizes_[b];
    }
    std::vector<std::size_t> cursor(blocks_.size(), 0);
    bool any = true;
    for (const auto &configs : block_configs_) {
        any = any && !configs.empty();
    }
    while (any) {
        SliceEntry e;
        e.config = cursor;
        for (std::size_t b = 0; b < blocks_.size(); b++) {
            const Occupancy &occ = block_configs_[b][cursor[b]];
            e.flat += block_flat(occ, blocks_[b].dim) * strides[b];
            e.normalization *= fock_normalization(occ);
        }
        slice_.push_back(std::move(e));
        std::size_t b = blocks_.size();
        while (b-- > 0) {
            if (++cursor[b] < block_configs_[b].size()) {
                break;
            }
            cursor[b] = 0;
        }
        if (b == std::numeric_limits<std::size_t>::max()) {
            break;
        }
    }
}

std::size_t PolyMulEngine::required_bytes() const {
    // Joint grid plus per-factor block spectra.
    std::size_t entries = grid_size_;
    for (std::size_t bs : block_sizes_) {
        entries = saturating_add(entries, saturating_mul(bs, std::max<std::size_t>(occupied_.size(), 1)));
    }
    return saturating_mul(entries, sizeof(Complex));
}

std::vector<std::vector<Complex>> PolyMulEngine::block_spectra(const Eigen::MatrixXcd &u) const {
    if (u.rows() != modes_ || u.cols() != modes_) {
        throw std::invalid_argument("PolyMulEngine: transfer matrix size does not match the mode count.");
    }
    std::vector<std::vector<Complex>> out;
    out.reserve(occupied_.size() * blocks_.size());
    for (int i : occupied_) {
        for (std::size_t b = 0; b < blocks_.size(); b++) {
            const ModeBlock &blk = blocks_[b];
            std::vector<Complex> factor(block_sizes_[b]);
            if (blk.dim > 1) {
                // Factor tensor: U_ji at the unit occupation of mode j.
                for (int k = 0; k < blk.modes; k++) {
                    std::size_t pos = checked_pow(static_cast<std::size_t>(blk.dim), blk.modes - 1 - k);
                    factor[pos] = u(blk.first_mode + k, i);
                }
            }
            std::vector<int> bdims(blk.modes, blk.dim);
            fft_inplace(factor, bdims, FftDirection::Forward);
            out.push_back(std::move(factor));
        }
    }
    return out;
}

std::vector<Complex> PolyMulEngine::evaluate(const Eigen::MatrixXcd &u) const {
    auto spectra = block_spectra(u);
    const std::size_t nb = blocks_.size();
    std::vector<Complex> grid(grid_size_);
    std::vector<std::size_t> cursor(nb, 0);
    for (std::size_t flat = 0; flat < grid_size_; flat++) {
        Complex prod{1.0, 0.0};
        for (std::size_t f = 0; f < occupied_.size(); f++) {
            Complex factor{};
            for (std::size_t b = 0; b < nb; b++) {
                factor += spectra[f * nb + b][cursor[b]];
            }
            prod *= ipow(factor, input_[occupied_[f]]);
        }
        grid[flat] = prod;
        for (std::size_t b = nb; b-- > 0;) {
            if (++cursor[b] < block_sizes_[b]) {
                break;
            }
            cursor[b] = 0;
        }
    }
    fft_inplace(grid, dims_, FftDirection::Inverse);
    std::vector<Complex> out(slice_.size());
    for (std::size_t s = 0; s < slice_.size(); s++) {
        out[s] = grid[slice_[s].flat] / input_normalization_;
    }
    return out;
}

Eigen::MatrixXcd PolyMulEngine::pullback(const Eigen::MatrixXcd &u, std::span<const Complex> cotangent) const {
    if (cotangent.size() != slice_.size()) {
        throw std::invalid_argument("PolyMulEngine::pullback: cotangent size does not match the slice.");
    }
    auto spectra = block_spectra(u);
    const std::size_t nb = blocks_.size();
    const std::size_t nf = occupied_.size();

    std::vector<Complex> adj(grid_size_);
    for (std::size_t s = 0; s < slice_.size(); s++) {
        adj[slice_[s].flat] = std::conj(cotangent[s]);
    }
    fft_inplace(adj, dims_, FftDirection::Inverse);

    // twiddle[j][v] = d FFT[T_i][k] / d U_ji at k_j = v.
    std::vector<std::vector<Complex>> twiddle(modes_);
    for (int j = 0; j < modes_; j++) {
        int d = dims_[j];
        twiddle[j].resize(d);
        for (int v = 0; v < d; v++) {
            // Size-one axes carry no photons, so those entries are dropped.
            twiddle[j][v] = d == 1 ? Complex{} : std::polar(1.0, -2.0 * std::numbers::pi * v / d);
        }
    }

    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes_, modes_);
    std::vector<std::size_t> cursor(nb, 0);
    std::vector<int> digits(modes_, 0);
    std::vector<Complex> factor(nf), powered(nf), prefix(nf + 1), suffix(nf + 1), coeff(nf);
    for (std::size_t flat = 0; flat < grid_size_; flat++) {
        Complex a = adj[flat];
        if (a != Complex{}) {
            for (std::size_t f = 0; f < nf; f++) {
                Complex v{};
                for (std::size_t b = 0; b < nb; b++) {
                    v += spectra[f * nb + b][cursor[b]];
                }
                factor[f] = v;
                powered[f] = ipow(v, input_[occupied_[f]]);
            }
            prefix[0] = 1.0;
            for (std::size_t f = 0; f < nf; f++) {
                prefix[f + 1] = prefix[f] * powered[f];
            }
            suffix[nf] = 1.0;
            for (std::size_t f = nf; f-- > 0;) {
                suffix[f] = suffix[f + 1] * powered[f];
            }
            for (std::size_t f = 0; f < nf; f++) {
                int n_i = input_[occupied_[f]];
                Complex d = static_cast<double>(n_i) * ipow(factor[f], n_i - 1) * prefix[f] * suffix[f + 1];
                coeff[f] = a * d;
            }
            for (std::size_t f = 0; f < nf; f++) {
                int i = occupied_[f];
                for (int j = 0; j < modes_; j++) {
                    w(j, i) += coeff[f] * twiddle[j][digits[j]];
                }
            }
        }
        for (std::size_t b = nb; b-- > 0;) {
            if (++cursor[b] < block_sizes_[b]) {
                break;
            }
            cursor[b] = 0;
        }
        for (int j = modes_; j-- > 0;) {
            if (++digits[j] < dims_[j]) {
                break;
            }
            digits[j] = 0;
        }
    }
    return w / input_normalization_;
}

}  // namespace heraldgen
