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

#include <span>

#include "heraldgen/fock.hpp"

namespace heraldgen {

enum class FftDirection { Forward, Inverse };

/// In-place multidimensional DFT over a row-major box. Forward uses the
/// exp(-2 pi i k.x / d) kernel; Inverse uses exp(+2 pi i k.x / d) and divides
/// by the box size. Safe to call concurrently.
void fft_inplace(std::span<Complex> data, std::span<const int> dims, FftDirection direction);

}  // namespace heraldgen
