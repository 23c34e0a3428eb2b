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
#include <optional>
#include <string>

#include "heraldgen/serialize.hpp"

namespace heraldgen::cli {

/// Command-line overrides shared by every command.
struct RunOptions {
    std::filesystem::path out = ".";
    /// Relative paths inside a config are resolved against this directory.
    std::filesystem::path config_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::size_t> memory_cap_bytes;
};

/// Thrown for malformed configs; the message names the offending key.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Each command validates its config, runs, writes its files under
/// options.out and returns the main JSON document it wrote.
Json cmd_simulate(const Json &config, const RunOptions &options);
Json cmd_discover(const Json &config, const RunOptions &options);
Json cmd_sparsify(const Json &config, const RunOptions &options);
Json cmd_compile(const Json &config, const RunOptions &options);
/// Returns {"csv": text}.
Json cmd_baseline(const Json &config, const RunOptions &options);
Json cmd_bench(const Json &config, const RunOptions &options);
Json cmd_orbits(const Json &config, const RunOptions &options);

/// Target states named by a discover-style config ("target" or "graph").
TargetSet targets_from_config(const Json &config);

/// Ordered instruction table of a circuit, one line per instruction.
std::string instruction_table(const CircuitFile &c);

}  // namespace heraldgen::cli
