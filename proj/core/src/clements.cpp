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


#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "heraldgen/optics.hpp"

namespace heraldgen {

namespace {

// SU(2) factor acting on modes (k, k + 1).
struct Block {
    int k = 0;
    Eigen::Matrix2cd mat;
};

// Sequence of blocks (leftmost first) followed by a diagonal.
struct Factorization {
    std::vector<Block> blocks;
    Eigen::VectorXcd diag;
};

// Moves a diagonal from the left of `blocks` to their right, conjugating
// each block so the product is unchanged.
void push_diagonal_right(std::vector<Block> &blocks, Eigen::VectorXcd &d) {
    for (auto &b : blocks) {
        Complex da = d(b.k);
        Complex db = d(b.k + 1);
        b.mat(0, 1) *= da / db;
        b.mat(1, 0) *= db / da;
    }
}

Factorization factorize(const Eigen::MatrixXcd &u) {
    const int n = static_cast<int>(u.rows());
    Eigen::MatrixXcd v = u;
    std::vector<Block> left;   // row ops in order of application
    std::vector<Block> right;  // column op inverses in order of application
    for (int i = 0; i + 1 < n; i++) {
        if (i % 2 == 0) {
            for (int j = 0; j <= i; j++) {
                int c = i - j;
                int r = n - 1 - j;
                Complex x = v(r, c);
                Complex y = v(r, c + 1);
                double rho = std::hypot(std::abs(x), std::abs(y));
                Eigen::Matrix2cd tinv = Eigen::Matrix2cd::Identity();
                if (rho > 0) {
                    tinv << y / rho, std::conj(x) / rho, -x / rho, std::conj(y) / rho;
                }
                apply_block_right(v, c, c + 1, tinv);
                v(r, c) = 0;
                right.push_back(Block{c, tinv});
            }
        } else {
            for (int j = 1; j <= i + 1; j++) {
                int r = n + j - i - 2;
                int c = j - 1;
                Complex x = v(r - 1, c);
                Complex y = v(r, c);
                double rho = std::hypot(std::abs(x), std::abs(y));
                Eigen::Matrix2cd t = Eigen::Matrix2cd::Identity();
                if (rho > 0) {
                    t << std::conj(x) / rho, std::conj(y) / rho, -y / rho, x / rho;
                }
                apply_block_left(v, r - 1, r, t);
                v(r, c) = 0;
                left.push_back(Block{r - 1, t});
            }
        }
    }
    // v = L_k ... L_1 u R_1 ... R_p is diagonal, so
    // u = L_1^-1 ... L_k^-1 v R_p^-1 ... R_1^-1.
    Factorization out;
    out.diag = v.diagonal();
    for (auto &b : left) {
        out.blocks.push_back(Block{b.k, b.mat.adjoint()});
    }
    std::vector<Block> tail;
    for (auto it = right.rbegin(); it != right.rend(); ++it) {
        tail.push_back(Block{it->k, it->mat.adjoint()});
    }
    push_diagonal_right(tail, out.diag);
    out.blocks.insert(out.blocks.end(), tail.begin(), tail.end());
    return out;
}

// Places blocks (leftmost first) into the brick slots; nullopt if some block
// would need a layer beyond the last one.
std::optional<Fabric> layer_blocks(const std::vector<Block> &blocks, const Eigen::VectorXcd &diag, int m) {
    Fabric f = Fabric::identity(m);
    std::vector<int> last(m, -1);
    for (const auto &b : blocks) {
        int l = std::max(last[b.k], last[b.k + 1]) + 1;
        if (l % 2 != b.k % 2) {
            l++;
        }
        if (l >= m) {
            return std::nullopt;
        }
        last[b.k] = l;
        last[b.k + 1] = l;
        auto &slot = f.layers[l][b.k / 2];
        Complex alpha = b.mat(0, 0);
        Complex beta = b.mat(1, 0);
        slot.theta = std::atan2(std::abs(beta), std::abs(alpha));
        slot.phi_t = std::abs(alpha) > 0 ? std::arg(alpha) : 0.0;
        slot.phi_r = std::abs(beta) > 0 ? std::arg(beta) : 0.0;
    }
    for (int i = 0; i < m; i++) {
        f.output_phases[i].phi = std::arg(diag(i));
    }
    return f;
}

}  // namespace

Fabric clements_decompose(const TransferMatrix &u) {
    const int m = u.modes();
    if (unitarity_deviation(u.matrix()) > TransferMatrix::kDefaultTolerance) {
        throw std::invalid_argument("clements_decompose: input is not unitary.");
    }
    if (m == 1) {
        Fabric f = Fabric::identity(1);
        f.output_phases[0].phi = std::arg(u(0, 0));
        return f;
    }
    Factorization direct = factorize(u.matrix());
    if (auto f = layer_blocks(direct.blocks, direct.diag, m)) {
        return *f;
    }
    // Decompose the transpose: u = D B_q^T ... B_1^T, then move D right.
    Factorization tr = factorize(u.matrix().transpose());
    std::vector<Block> blocks;
    for (auto it = tr.blocks.rbegin(); it != tr.blocks.rend(); ++it) {
        blocks.push_back(Block{it->k, it->mat.transpose()});
    }
    push_diagonal_right(blocks, tr.diag);
    if (auto f = layer_blocks(blocks, tr.diag, m)) {
        return *f;
    }
    throw std::logic_error("clements_decompose: factors do not fit the brick layout.");
}

}  // namespace heraldgen
