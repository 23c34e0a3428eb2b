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


#include "heraldgen/fusion.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace heraldgen {

void FusionParams::validate() const {
    if (!(p_bell > 0 && p_bell <= 1) || !(p_fusion > 0 && p_fusion <= 1)) {
        throw std::invalid_argument("Fusion probabilities must lie in (0, 1].");
    }
}

double fusion_success(const LabeledGraph &g, const FusionParams &params) {
    params.validate();
    const int e = g.edge_count();
    const int fusions = 2 * e - g.vertices();
    if (fusions < 0) {
        throw std::invalid_argument("Fusion baseline needs 2E >= N (got E=" + std::to_string(e) +
                                    ", N=" + std::to_string(g.vertices()) + ").");
    }
    if (!g.connected()) {
        throw std::invalid_argument("Fusion baseline needs a connected graph.");
    }
    return std::pow(params.p_bell, e) * std::pow(params.p_fusion, fusions);
}

LcFusion lc_optimized_fusion(const LabeledGraph &g, const FusionParams &params) {
    if (g.vertices() > 8) {
        throw std::invalid_argument("LC-optimized fusion is limited to 8 vertices.");
    }
    auto orbit = lc_orbit(g);
    return LcFusion{fusion_success(orbit.representative, params), orbit.representative};
}

double improvement_ratio(double discovered, double baseline) {
    if (!(baseline > 0)) {
        throw std::invalid_argument("Improvement ratio needs a positive baseline.");
    }
    return discovered / baseline;
}

std::string format_sig2(double value) {
    char buf[32];
    double a = std::abs(value);
    if (a != 0 && (a < 1e-2 || a >= 1e3)) {
        std::snprintf(buf, sizeof buf, "%.1e", value);
    } else {
        std::snprintf(buf, sizeof buf, "%.*g", 2, value);
        // %g drops a trailing zero ("1" for 1.0); keep two digits.
        std::string s = buf;
        if (value != 0 && s.find('.') == std::string::npos && a < 10) {
            s += ".0";
        }
        return s;
    }
    return buf;
}

BaselineRow baseline_row(const LabeledGraph &g, const FusionParams &params) {
    auto lc = lc_optimized_fusion(g, params);
    return BaselineRow{g, g.edge_count(), g.vertices(), fusion_success(g, params), lc.probability, lc.representative};
}

}  // namespace heraldgen
