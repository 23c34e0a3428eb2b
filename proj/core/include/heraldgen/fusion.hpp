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

#include <string>

#include "heraldgen/graph.hpp"

namespace heraldgen {

/// Unboosted type-II fusion building blocks.
struct FusionParams {
    double p_bell = 3.0 / 16.0;
    double p_fusion = 0.5;

    void validate() const;
};

/// p_bell^E * p_fusion^(2E - N) for a connected graph built from one Bell
/// pair per edge. Throws when 2E < N or the graph is disconnected.
double fusion_success(const LabeledGraph &g, const FusionParams &params = {});

struct LcFusion {
    double probability = 0;
    LabeledGraph representative;
};

/// Best fusion baseline over the local-complementation orbit of g, which
/// is the one built on the orbit's sparsest member.
LcFusion lc_optimized_fusion(const LabeledGraph &g, const FusionParams &params = {});

/// discovered / baseline. Throws when baseline <= 0.
double improvement_ratio(double discovered, double baseline);

/// Value rounded to two significant figures, e.g. "4.7" or "1.6e-03".
std::string format_sig2(double value);

struct BaselineRow {
    LabeledGraph graph;
    int edges = 0;
    int vertices = 0;
    double direct = 0;
    double lc_optimized = 0;
    LabeledGraph representative;
};

BaselineRow baseline_row(const LabeledGraph &g, const FusionParams &params = {});

}  // namespace heraldgen
