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

#include "heraldgen/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heraldgen {

namespace {

// FFTW planning is not thread-safe while execution with the new-array
// interface is, so plans are created once under a lock and then shared.
class PlanCache {
   public:
    ~PlanCache() {
        for (auto &[key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(const std::vector<int> &dims, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(dims, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) {
            return it->second;
        }
        std::size_t n = 1;
        for (int d : dims) {
            n *= static_cast<std::size_t>(d);
        }
        // Planning with FFTW_ESTIMATE does not touch the buffer contents.
        std::vector<Complex> scratch(n);
        auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
        fftw_plan plan = fftw_plan_dft(
            static_cast<int>(dims.size()), dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) {
            throw std::runtime_error("FFTW failed to create a plan.");
        }
        plans_.emplace(std::move(key), plan);
        return plan;
    }

   private:
    std::mutex mutex_;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache &plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

void fft_inplace(std::span<Complex> data, std::span<const int> dims, FftDirection direction) {
    std::size_t n = 1;
    for (int d : dims) {
        if (d < 1) {
            throw std::invalid_argument("fft_inplace: dims must be positive.");
        }
        n *= static_cast<std::size_t>(d);
    }
    if (n != data.size()) {
        throw std::invalid_argument("fft_inplace: data size does not match dims.");
    }
    if (dims.empty() || n == 1) {
        return;
    }
    int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = plan_cache().get(std::vector<int>(dims.begin(), dims.end()), sign);
    auto *buf = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan, buf, buf);
    if (direction == FftDirection::Inverse) {
        double scale = 1.0 / static_cast<double>(n);
        for (auto &v : data) {
            v *= scale;
        }
    }
}

}  // namespace heraldgen
