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
#include <vector>

#include "heraldgen/simulate.hpp"

namespace heraldgen {

/// Generalized Gell-Mann basis of su(m), normalized to tr(T_a T_b) = 2 delta_ab.
/// Order: for each pair j < k the symmetric then antisymmetric generator,
/// followed by the m - 1 diagonal ones.
std::vector<Eigen::MatrixXcd> su_generators(int m);

/// m such that m^2 - 1 == count; throws if there is none.
int modes_for_param_count(Eigen::Index count);

/// exp(i sum_a xi_a T_a) and the pieces needed to differentiate it.
class LieExponential {
   public:
    explicit LieExponential(const Eigen::VectorXd &xi);

    int modes() const { return m_; }
    const Eigen::MatrixXcd &unitary() const { return u_; }

    /// Given W with dL = 2 Re sum_{j,i} W_ji dU_ji, returns dL/dxi.
    Eigen::VectorXd pullback(const Eigen::MatrixXcd &w) const;

   private:
    int m_ = 0;
    Eigen::MatrixXcd u_;
    Eigen::MatrixXcd v_;
    Eigen::VectorXd lambda_;
};

/// sum_a xi_a T_a.
Eigen::MatrixXcd lie_hamiltonian(const Eigen::VectorXd &xi);

TransferMatrix unitary_from_params(const Eigen::VectorXd &xi);

}  // namespace heraldgen
