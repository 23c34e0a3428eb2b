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
#include "heraldgen/permanent.hpp"
#include "heraldgen/simulate.hpp"

namespace {

using namespace heraldgen;

Occupancy spread_input(int m, int n) {
    std::vector<int> c(m, 0);
    for (int k = 0; k < n; k++) {
        c[k % m]++;
    }
    return Occupancy(c);
}

// Symmetric split: half the modes and half the photons on each side.
void BM_SimulateRestricted(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    std::mt19937_64 rng(1);
    auto u = haar_unitary(m, rng);
    auto in = spread_input(m, n);
    auto part = ModePartition::make(m / 2, m - m / 2, n / 2, n - n / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_restricted(u, in, part));
    }
}
BENCHMARK(BM_SimulateRestricted)
    ->ArgsProduct({{4, 6, 8, 10}, {2, 4, 6}})
    ->Unit(benchmark::kMillisecond);

void BM_SimulateFull(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    std::mt19937_64 rng(2);
    auto u = haar_unitary(m, rng);
    auto in = spread_input(m, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_full(u, in));
    }
}
BENCHMARK(BM_SimulateFull)->ArgsProduct({{4, 6, 8}, {2, 4}})->Unit(benchmark::kMillisecond);

void BM_Permanent(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    auto u = haar_unitary(n, rng).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent(u));
    }
}
BENCHMARK(BM_Permanent)->DenseRange(4, 16, 4);

}  // namespace
