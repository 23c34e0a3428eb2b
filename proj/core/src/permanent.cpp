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


#include "heraldgen/permanent.hpp"

#include <stdexcept>
#include <vector>

namespace heraldgen {

Complex permanent(const Eigen::MatrixXcd &a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("permanent needs a square matrix.");
    }
    const int n = static_cast<int>(a.rows());
    if (n == 0) {
        return 1.0;
    }
    if (n > 30) {
        throw std::invalid_argument("permanent: matrix too large.");
    }
    std::vector<Complex> row_sums(n, Complex{});
    Complex total{};
    const unsigned long long subsets = 1ULL << n;
    unsigned long long gray = 0;
    for (unsigned long long k = 1; k < subsets; k++) {
        int col = __builtin_ctzll(k);
        unsigned long long next = gray ^ (1ULL << col);
        double sign_flip = (next >> col) & 1 ? 1.0 : -1.0;
        for (int r = 0; r < n; r++) {
            row_sums[r] += sign_flip * a(r, col);
        }
        gray = next;
        Complex prod{1.0, 0.0};
        for (int r = 0; r < n; r++) {
            prod *= row_sums[r];
        }
        int size = __builtin_popcountll(gray);
        total += ((n - size) % 2 == 0) ? prod : -prod;
    }
    return total;
}

Complex amplitude_oracle(const TransferMatrix &u, const Occupancy &input, const Occupancy &output) {
    const int m = u.modes();
    if (static_cast<int>(input.modes()) != m || static_cast<int>(output.modes()) != m) {
        throw std::invalid_argument("amplitude_oracle: occupancy length does not match the matrix.");
    }
    if (input.total() != output.total()) {
        throw std::invalid_argument("amplitude_oracle: input and output photon totals differ.");
    }
    std::vector<int> rows, cols;
    for (int j = 0; j < m; j++) {
        rows.insert(rows.end(), output[j], j);
        cols.insert(cols.end(), input[j], j);
    }
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXcd sub(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            sub(r, c) = u(rows[r], cols[c]);
        }
    }
    return permanent(sub) / (fock_normalization(input) * fock_normalization(output));
}

}  // namespace heraldgen
