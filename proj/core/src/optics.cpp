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


#include "heraldgen/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heraldgen {

Fabric Fabric::identity(int m) {
    if (m < 1) {
        throw std::invalid_argument("Fabric needs at least one mode.");
    }
    Fabric f;
    f.m = m;
    f.layers.resize(m);
    for (int l = 0; l < m; l++) {
        for (int s = l % 2; s + 1 < m; s += 2) {
            f.layers[l].push_back(BeamsplitterParams{s, s + 1, 0, 0, 0});
        }
    }
    for (int i = 0; i < m; i++) {
        f.output_phases.push_back(PhaseshifterParams{i, 0});
    }
    return f;
}

void Fabric::validate() const {
    Fabric ref = identity(m);
    if (layers.size() != ref.layers.size() || output_phases.size() != ref.output_phases.size()) {
        throw std::invalid_argument("Fabric must have m layers and m phases.");
    }
    for (std::size_t l = 0; l < layers.size(); l++) {
        if (layers[l].size() != ref.layers[l].size()) {
            throw std::invalid_argument("Fabric layer " + std::to_string(l) + " has the wrong beamsplitter count.");
        }
        for (std::size_t k = 0; k < layers[l].size(); k++) {
            const auto &b = layers[l][k];
            if (b.i != ref.layers[l][k].i || b.j != ref.layers[l][k].j) {
                throw std::invalid_argument("Fabric layer " + std::to_string(l) + " couples the wrong modes.");
            }
            if (!std::isfinite(b.theta) || !std::isfinite(b.phi_t) || !std::isfinite(b.phi_r)) {
                throw std::invalid_argument("Fabric has a non-finite angle.");
            }
        }
    }
    for (int i = 0; i < m; i++) {
        if (output_phases[i].i != i || !std::isfinite(output_phases[i].phi)) {
            throw std::invalid_argument("Fabric phase layer must list modes 0..m-1 in order.");
        }
    }
}

std::size_t Fabric::beamsplitter_count() const {
    std::size_t n = 0;
    for (const auto &layer : layers) {
        n += layer.size();
    }
    return n;
}

double wrap_angle(double angle) {
    double r = std::remainder(angle, 2 * std::numbers::pi);
    if (r <= -std::numbers::pi) {
        r += 2 * std::numbers::pi;
    }
    return r;
}

BsClass classify_bs(double theta, double tol) {
    if (tol < 0) {
        throw std::invalid_argument("classify_bs: tolerance must be non-negative.");
    }
    double t = wrap_angle(theta);
    double half_pi = std::numbers::pi / 2;
    double k = std::round(t / half_pi);
    if (std::abs(t - k * half_pi) <= tol) {
        return static_cast<long long>(k) % 2 == 0 ? BsClass::Trivial : BsClass::SwapEquivalent;
    }
    return BsClass::Generic;
}

const char *bs_class_name(BsClass c) {
    switch (c) {
        case BsClass::Trivial:
            return "trivial";
        case BsClass::SwapEquivalent:
            return "swap_equivalent";
        case BsClass::Generic:
            return "generic";
    }
    return "generic";
}

Eigen::Matrix2cd bs_block(double theta, double phi_t, double phi_r) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    Eigen::Matrix2cd b;
    b << std::polar(c, phi_t), -std::polar(s, -phi_r), std::polar(s, phi_r), std::polar(c, -phi_t);
    return b;
}

void apply_block_left(Eigen::MatrixXcd &target, int i, int j, const Eigen::Matrix2cd &block) {
    for (Eigen::Index col = 0; col < target.cols(); col++) {
        Complex a = target(i, col);
        Complex b = target(j, col);
        target(i, col) = block(0, 0) * a + block(0, 1) * b;
        target(j, col) = block(1, 0) * a + block(1, 1) * b;
    }
}

void apply_block_right(Eigen::MatrixXcd &target, int i, int j, const Eigen::Matrix2cd &block) {
    for (Eigen::Index row = 0; row < target.rows(); row++) {
        Complex a = target(row, i);
        Complex b = target(row, j);
        target(row, i) = a * block(0, 0) + b * block(1, 0);
        target(row, j) = a * block(0, 1) + b * block(1, 1);
    }
}

namespace {

void check_pair(int i, int j, int m) {
    if (i < 0 || j >= m || i >= j) {
        throw std::invalid_argument("Mode pair must satisfy 0 <= i < j < m.");
    }
}

}  // namespace

TransferMatrix bs_matrix(const BeamsplitterParams &p, int m) {
    check_pair(p.i, p.j, m);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    Eigen::Matrix2cd b = bs_block(p.theta, p.phi_t, p.phi_r);
    u(p.i, p.i) = b(0, 0);
    u(p.i, p.j) = b(0, 1);
    u(p.j, p.i) = b(1, 0);
    u(p.j, p.j) = b(1, 1);
    return TransferMatrix(std::move(u));
}

TransferMatrix phase_matrix(const PhaseshifterParams &p, int m) {
    if (p.i < 0 || p.i >= m) {
        throw std::invalid_argument("Phase shifter mode out of range.");
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    u(p.i, p.i) = std::polar(1.0, p.phi);
    return TransferMatrix(std::move(u));
}

TransferMatrix swap_matrix(int i, int j, int m) {
    check_pair(std::min(i, j), std::max(i, j), m);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    u(i, i) = 0;
    u(j, j) = 0;
    u(i, j) = 1;
    u(j, i) = 1;
    return TransferMatrix(std::move(u));
}

TransferMatrix fabric_matrix(const Fabric &f) {
    f.validate();
    Eigen::MatrixXcd u(f.m, f.m);
    u.setZero();
    for (const auto &p : f.output_phases) {
        u(p.i, p.i) = std::polar(1.0, p.phi);
    }
    // Build right to left: the last layer sits next to the phase layer.
    for (std::size_t l = f.layers.size(); l-- > 0;) {
        for (const auto &b : f.layers[l]) {
            apply_block_left(u, b.i, b.j, bs_block(b.theta, b.phi_t, b.phi_r));
        }
    }
    return TransferMatrix(std::move(u), 1e-9);
}

double deviation_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    Eigen::Index r = 0, c = 0;
    a.cwiseAbs().maxCoeff(&r, &c);
    Complex phase{1.0, 0.0};
    if (std::abs(b(r, c)) > 0) {
        Complex ratio = a(r, c) / b(r, c);
        phase = ratio / std::abs(ratio);
    }
    return (a - phase * b).cwiseAbs().maxCoeff();
}

TransferMatrix haar_unitary(int m, std::mt19937_64 &rng) {
    if (m < 1) {
        throw std::invalid_argument("haar_unitary needs m >= 1.");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(m, m);
    for (int r = 0; r < m; r++) {
        for (int c = 0; c < m; c++) {
            z(r, c) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase freedom of QR so the distribution is Haar.
    for (int k = 0; k < m; k++) {
        double a = std::abs(r(k, k));
        if (a > 0) {
            q.col(k) *= r(k, k) / a;
        }
    }
    return TransferMatrix(q, 1e-9);
}

}  // namespace heraldgen
