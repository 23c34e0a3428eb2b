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

#include "heraldgen/fock.hpp"
#include "heraldgen/simulate.hpp"

namespace heraldgen {

/// Permanent via Ryser's formula with Gray-code subset updates, O(2^n n).
Complex permanent(const Eigen::MatrixXcd &a);

/// Output amplitude <out| U |in> computed from the permanent of U with rows
/// repeated by `out` and columns repeated by `in`. Exponential by design;
/// intended as an independent check of the FFT simulator.
Complex amplitude_oracle(const TransferMatrix &u, const Occupancy &input, const Occupancy &output);

}  // namespace heraldgen
