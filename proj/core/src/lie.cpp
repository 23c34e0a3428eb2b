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


#include "heraldgen/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldgen {

namespace {

double diag_scale(int l) {
    return std::sqrt(2.0 / (l * (l + 1.0)));
}

// (e^{ia} - e^{ib}) / (a - b), continuous at a = b.
Complex divided_difference(double a, double b) {
    double half = 0.5 * (a - b);
    double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    return Complex(0.0, 1.0) * std::polar(1.0, 0.5 * (a + b)) * sinc;
}

}  // namespace

std::vector<Eigen::MatrixXcd> su_generators(int m) {
    if (m < 2) {
        throw std::invalid_argument("su_generators needs m >= 2.");
    }
    std::vector<Eigen::MatrixXcd> out;
    for (int j = 0; j < m; j++) {
        for (int k = j + 1; k < m; k++) {
            Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
            s(j, k) = 1;
            s(k, j) = 1;
            out.push_back(s);
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
            a(j, k) = Complex(0, -1);
            a(k, j) = Complex(0, 1);
            out.push_back(a);
        }
    }
    for (int l = 1; l < m; l++) {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
        for (int j = 0; j < l; j++) {
            d(j, j) = diag_scale(l);
        }
        d(l, l) = -l * diag_scale(l);
        out.push_back(d);
    }
    return out;
}

int modes_for_param_count(Eigen::Index count) {
    int m = static_cast<int>(std::llround(std::sqrt(static_cast<double>(count) + 1.0)));
    if (m < 2 || static_cast<Eigen::Index>(m) * m - 1 != count) {
        throw std::invalid_argument("Lie parameter count must equal m^2 - 1 for some m >= 2.");
    }
    return m;
}

Eigen::MatrixXcd lie_hamiltonian(const Eigen::VectorXd &xi) {
    const int m = modes_for_param_count(xi.size());
    if (!xi.allFinite()) {
        throw std::invalid_argument("Lie parameters must be finite.");
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    Eigen::Index a = 0;
    for (int j = 0; j < m; j++) {
        for (int k = j + 1; k < m; k++) {
            double s = xi(a++);
            double t = xi(a++);
            h(j, k) += Complex(s, -t);
            h(k, j) += Complex(s, t);
        }
    }
    for (int l = 1; l < m; l++) {
        double c = xi(a++) * diag_scale(l);
        for (int j = 0; j < l; j++) {
            h(j, j) += c;
        }
        h(l, l) -= l * c;
    }
    return h;
}

LieExponential::LieExponential(const Eigen::VectorXd &xi) {
    Eigen::MatrixXcd h = lie_hamiltonian(xi);
    m_ = static_cast<int>(h.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigendecomposition failed.");
    }
    v_ = eig.eigenvectors();
    lambda_ = eig.eigenvalues();
    Eigen::VectorXcd phases(m_);
    for (int p = 0; p < m_; p++) {
        phases(p) = std::polar(1.0, lambda_(p));
    }
    u_ = v_ * phases.asDiagonal() * v_.adjoint();
}

Eigen::VectorXd LieExponential::pullback(const Eigen::MatrixXcd &w) const {
    // dU = V [(V^dag dH V) o Phi] V^dag, so with M = W^T,
    // dL = 2 Re tr(Z dH) where Z = V Y^T V^dag and Y_pq = (V^dag M V)_qp Phi_pq.
    Eigen::MatrixXcd a = v_.adjoint() * w.transpose() * v_;
    Eigen::MatrixXcd y(m_, m_);
    for (int p = 0; p < m_; p++) {
        for (int q = 0; q < m_; q++) {
            y(p, q) = a(q, p) * divided_difference(lambda_(p), lambda_(q));
        }
    }
    Eigen::MatrixXcd z = v_ * y.transpose() * v_.adjoint();

    Eigen::VectorXd grad(static_cast<Eigen::Index>(m_) * m_ - 1);
    Eigen::Index idx = 0;
    for (int j = 0; j < m_; j++) {
        for (int k = j + 1; k < m_; k++) {
            grad(idx++) = 2.0 * (z(k, j) + z(j, k)).real();
            grad(idx++) = 2.0 * (Complex(0, -1) * (z(k, j) - z(j, k))).real();
        }
    }
    for (int l = 1; l < m_; l++) {
        Complex tr{};
        for (int j = 0; j < l; j++) {
            tr += z(j, j);
        }
        tr -= static_cast<double>(l) * z(l, l);
        grad(idx++) = 2.0 * diag_scale(l) * tr.real();
    }
    return grad;
}

TransferMatrix unitary_from_params(const Eigen::VectorXd &xi) {
    return TransferMatrix(LieExponential(xi).unitary(), 1e-10);
}

}  // namespace heraldgen
