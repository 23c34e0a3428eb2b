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

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "heraldgen/compile.hpp"
#include "heraldgen/discover.hpp"
#include "heraldgen/fusion.hpp"
#include "heraldgen/optics.hpp"
#include "heraldgen/simulate.hpp"
#include "heraldgen/sparsify.hpp"

namespace heraldgen {

using Json = nlohmann::json;

/// FNV-1a 64-bit hash of the compact dump (object keys are sorted), as 16
/// lowercase hex digits.
std::string config_hash(const Json &config);

/// Doubles are written in shortest round-trip form, so a parsed document
/// re-serializes to the same bytes.
std::string dump_json(const Json &j);
void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);
Json read_json_file(const std::filesystem::path &path);

/// %.17g, the CSV number format.
std::string csv_number(double v);

Json occupancy_to_json(const Occupancy &o);
Occupancy occupancy_from_json(const Json &j);

/// Rows of [re, im] pairs.
Json matrix_to_json(const Eigen::MatrixXcd &u);
Eigen::MatrixXcd matrix_from_json(const Json &j);

/// [{"occupancy": [...], "re": x, "im": y}, ...] in descending occupancy order.
Json state_to_json(const PureState &s);
PureState state_from_json(const Json &j, std::size_t modes);

Json outcome_to_json(const HeraldedOutcome &o);
HeraldedOutcome outcome_from_json(const Json &j, std::size_t signal_modes);

Json partition_to_json(const ModePartition &p);
ModePartition partition_from_json(const Json &j);

/// {m, layers: [[{i, j, theta, phi_t, phi_r}, ...], ...], output_phases: [...]}.
Json fabric_to_json(const Fabric &f);
Fabric fabric_from_json(const Json &j);

struct CircuitFile {
    CompiledCircuit circuit;
    Occupancy input;
};

/// {m, input, permutation, phases, beamsplitters: [{i, j, theta, phi_t, phi_r}]}.
Json circuit_to_json(const CircuitFile &c);
CircuitFile circuit_from_json(const Json &j);

struct DiscoveryArtifact {
    std::string config_hash;
    std::uint64_t seed = 0;
    Json config;
    Occupancy input;
    ModePartition partition;
    Eigen::MatrixXcd u;
    std::vector<HeraldedOutcome> heralds;
    double success_probability = 0;
    int matched = 0;
    int best_restart = 0;
    std::vector<RestartSummary> restarts;
    std::vector<double> loss_trace;
};

Json discovery_to_json(const DiscoveryArtifact &a);
DiscoveryArtifact discovery_from_json(const Json &j);

struct SparsifyArtifact {
    std::string config_hash;
    std::uint64_t seed = 0;
    Json config;
    Occupancy input;
    ModePartition partition;
    SparsifyResult result;
};

/// `status` is "IMPROVED" or "NO_IMPROVEMENT".
Json sparsify_to_json(const SparsifyArtifact &a);
SparsifyArtifact sparsify_from_json(const Json &j);

/// pattern,probability,matched,fidelity,state
std::string outcomes_csv(const std::vector<HeraldedOutcome> &outcomes, const std::vector<PureState> &targets);

struct BaselineEntry {
    BaselineRow row;
    std::string id;
    /// Negative when no discovered probability was supplied.
    double discovered = -1;
};

/// graph,edges,vertices,direct,lc_optimized,representative,discovered,improvement
std::string baseline_csv(const std::vector<BaselineEntry> &entries);

}  // namespace heraldgen
