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

#include <variant>
#include <vector>

#include "heraldgen/fock.hpp"
#include "heraldgen/optics.hpp"

namespace heraldgen {

struct SwapInstruction {
    int i = 0;
    int j = 1;

    bool operator==(const SwapInstruction &) const = default;
};

using CircuitInstruction = std::variant<PhaseshifterParams, SwapInstruction, BeamsplitterParams>;

/// Instructions listed in the order they act on the light (first applied first).
using InstructionList = std::vector<CircuitInstruction>;

/// Canonical circuit: a phase per mode, then a mode permutation, then
/// beamsplitters. The transfer matrix is BS_last ... BS_first * Perm * D with
/// Perm[permutation[k], k] = 1.
struct CompiledCircuit {
    int m = 0;
    std::vector<double> phases;
    std::vector<int> permutation;
    std::vector<BeamsplitterParams> beamsplitters;

    static CompiledCircuit identity(int m);
    bool has_trivial_prefix() const;

    bool operator==(const CompiledCircuit &) const = default;
};

/// Transfer matrix of an instruction list over m modes.
TransferMatrix instructions_matrix(const InstructionList &list, int m);

/// Rewrites trivial beamsplitters as two phases and SWAP-equivalent ones as
/// a SWAP followed by phases; generic ones are copied. Special angles must be
/// exact multiples of pi/2 (see round_special), otherwise this throws.
InstructionList decompose_special(const Fabric &f, double tol = kClassifyTolerance);

/// Pushes every phase and SWAP ahead of all beamsplitters. Phases pass
/// through a beamsplitter unchanged and shift its phi_r; SWAPs relabel the
/// beamsplitter modes.
CompiledCircuit commute_to_front(const InstructionList &list, int m);

struct AbsorbedCircuit {
    CompiledCircuit circuit;
    Occupancy input;
};

/// Drops the phase layer (a global phase on a Fock input) and moves the
/// permutation into the input occupancies.
AbsorbedCircuit absorb_into_input(const CompiledCircuit &c, const Occupancy &input);

/// Same, for a state given as amplitudes; throws unless it is a single Fock state.
AbsorbedCircuit absorb_into_input(const CompiledCircuit &c, const PureState &input);

TransferMatrix circuit_matrix(const CompiledCircuit &c);

/// decompose_special followed by commute_to_front.
CompiledCircuit compile_fabric(const Fabric &f, double tol = kClassifyTolerance);

/// Circuit as an instruction list in application order.
InstructionList circuit_instructions(const CompiledCircuit &c);

}  // namespace heraldgen
