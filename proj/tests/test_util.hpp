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


// Shared generators and brute-force references for the tests.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "heraldgen/fock.hpp"
#include "heraldgen/optics.hpp"
#include "heraldgen/simulate.hpp"

namespace heraldgen::testing {

using C = std::complex<double>;

inline Occupancy random_occupancy(int m, int n, std::mt19937_64 &rng) {
    std::vector<int> c(m, 0);
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int k = 0; k < n; k++) {
        c[pick(rng)]++;
    }
    return Occupancy(c);
}

inline std::vector<C> random_qubit_state(int qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<C> psi(std::size_t{1} << qubits);
    double n2 = 0;
    for (auto &a : psi) {
        a = C(g(rng), g(rng));
        n2 += std::norm(a);
    }
    for (auto &a : psi) {
        a /= std::sqrt(n2);
    }
    return psi;
}

/// Permanent as a plain sum over permutations.
inline C permutation_sum_permanent(const Eigen::MatrixXcd &a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    C total = 0;
    do {
        C prod = 1;
        for (int r = 0; r < n; r++) {
            prod *= a(r, p[r]);
        }
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return n == 0 ? C(1) : total;
}

/// Output state by expanding prod_i (sum_j U_ji a_j^dag)^{n_i} |0> term by term
/// in a sparse monomial map. Returns Fock amplitudes.
inline std::map<std::vector<int>, C> expand_output(const Eigen::MatrixXcd &u, const Occupancy &in) {
    const int m = static_cast<int>(u.rows());
    std::map<std::vector<int>, C> poly;
    poly[std::vector<int>(m, 0)] = 1;
    for (int i = 0; i < m; i++) {
        for (int rep = 0; rep < in[i]; rep++) {
            std::map<std::vector<int>, C> next;
            for (const auto &[mono, coeff] : poly) {
                for (int j = 0; j < m; j++) {
                    if (u(j, i) == C(0)) {
                        continue;
                    }
                    auto k = mono;
                    k[j]++;
                    next[k] += coeff * u(j, i);
                }
            }
            poly = std::move(next);
        }
    }
    double in_norm = 1;
    for (int c : in.counts()) {
        in_norm *= std::tgamma(c + 1.0);
    }
    std::map<std::vector<int>, C> out;
    for (const auto &[mono, coeff] : poly) {
        double f = 1;
        for (int c : mono) {
            f *= std::tgamma(c + 1.0);
        }
        out[mono] = coeff * std::sqrt(f / in_norm);
    }
    return out;
}

/// Random brick fabric where roughly half the beamsplitters sit exactly at a
/// multiple of pi/2.
inline Fabric random_sparse_fabric(int m, std::mt19937_64 &rng) {
    Fabric f = Fabric::identity(m);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> kind(0, 5);
    for (auto &layer : f.layers) {
        for (auto &b : layer) {
            int k = kind(rng);
            if (k < 3) {
                // Keep generic draws clear of the classification band.
                do {
                    b.theta = ang(rng);
                } while (classify_bs(b.theta, 2 * kClassifyTolerance) != BsClass::Generic);
            } else {
                b.theta = (k - 3) * std::numbers::pi / 2;
            }
            b.phi_t = ang(rng);
            b.phi_r = ang(rng);
        }
    }
    for (auto &p : f.output_phases) {
        p.phi = ang(rng);
    }
    return f;
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace heraldgen::testing
