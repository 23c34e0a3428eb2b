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
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heraldgen/fock.hpp"

namespace heraldgen {

enum class Equivalence { Single, PauliOrbit, CliffordOrbit };

const char *equivalence_name(Equivalence e);
Equivalence parse_equivalence(const std::string &name);

/// Dual-rail target states, deduplicated up to global phase.
struct TargetSet {
    std::vector<PureState> states;
    Equivalence provenance = Equivalence::Single;
};

/// Two statevectors describe the same ray when their Bures angle is below this.
inline constexpr double kRayTolerance = 1e-9;

TargetSet single_target(std::span<const Complex> psi);

/// All Pauli-string images of psi, deduplicated and dual-rail encoded.
TargetSet pauli_orbit(std::span<const Complex> psi);

/// The 24 single-qubit Cliffords modulo global phase, generated from H and S.
const std::vector<Eigen::Matrix2cd> &clifford1_group();

/// Distinct states (up to phase) under all 24^n local Clifford products.
/// n = 5 requires allow_long.
std::size_t clifford1_orbit_size(std::span<const Complex> psi, bool allow_long = false);

/// The orbit itself, dual-rail encoded; same limits as clifford1_orbit_size.
TargetSet clifford1_orbit(std::span<const Complex> psi, bool allow_long = false);

__extension__ typedef unsigned __int128 uint128;

/// 2^n prod_{i=1..n} (2^i + 1), the number of n-qubit stabilizer states.
uint128 stabilizer_count(int n);
std::string to_string(uint128 value);

struct OrbitClass {
    std::size_t size = 0;
    /// |Cliff_1^n| / size.
    std::size_t subgroup_order = 0;
    std::vector<Complex> representative;
};

struct OrbitPartitionReport {
    int qubits = 0;
    std::size_t total_states = 0;
    std::vector<OrbitClass> classes;  // largest first
    bool consistent = false;          // total equals stabilizer_count(n)
};

/// Enumerates every n-qubit stabilizer state by closure of |0...0> under
/// H, S and CZ, then splits the set into local Clifford orbits.
OrbitPartitionReport verify_orbit_partition(int n = 3);

}  // namespace heraldgen
