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

#include <benchmark/benchmark.h>

#include <random>

#include "heraldgen/optics.hpp"

namespace {

using namespace heraldgen;

void BM_ClementsDecompose(benchmark::State &state) {
    std::mt19937_64 rng(4);
    auto u = haar_unitary(static_cast<int>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clements_decompose(u));
    }
}
BENCHMARK(BM_ClementsDecompose)->RangeMultiplier(2)->Range(4, 32);

void BM_FabricMatrix(benchmark::State &state) {
    std::mt19937_64 rng(5);
    auto f = clements_decompose(haar_unitary(static_cast<int>(state.range(0)), rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fabric_matrix(f));
    }
}
BENCHMARK(BM_FabricMatrix)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
