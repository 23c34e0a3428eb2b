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


#include "heraldgen/compile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heraldgen {

namespace {

// Special angles closer than this to k pi/2 count as already rounded.
constexpr double kExactAngle = 1e-12;

void push_phase(InstructionList &out, int mode, double phi) {
    double w = wrap_angle(phi);
    if (w != 0) {
        out.emplace_back(PhaseshifterParams{mode, w});
    }
}

// B on modes (i, j) with mode labels sent through `sigma`.
BeamsplitterParams relabel(const BeamsplitterParams &b, int a, int c) {
    BeamsplitterParams out = b;
    if (a < c) {
        out.i = a;
        out.j = c;
    } else {
        out.i = c;
        out.j = a;
        out.theta = -b.theta;
        out.phi_t = -b.phi_t;
        out.phi_r = -b.phi_r;
    }
    return out;
}

}  // namespace

CompiledCircuit CompiledCircuit::identity(int m) {
    CompiledCircuit c;
    c.m = m;
    c.phases.assign(m, 0.0);
    for (int k = 0; k < m; k++) {
        c.permutation.push_back(k);
    }
    return c;
}

bool CompiledCircuit::has_trivial_prefix() const {
    for (int k = 0; k < m; k++) {
        if (phases[k] != 0 || permutation[k] != k) {
            return false;
        }
    }
    return true;
}

TransferMatrix instructions_matrix(const InstructionList &list, int m) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    for (const auto &ins : list) {
        if (const auto *p = std::get_if<PhaseshifterParams>(&ins)) {
            if (p->i < 0 || p->i >= m) {
                throw std::invalid_argument("Phase instruction mode out of range.");
            }
            u.row(p->i) *= std::polar(1.0, p->phi);
        } else if (const auto *s = std::get_if<SwapInstruction>(&ins)) {
            if (s->i < 0 || s->j < 0 || s->i >= m || s->j >= m || s->i == s->j) {
                throw std::invalid_argument("Swap instruction modes out of range.");
            }
            u.row(s->i).swap(u.row(s->j));
        } else {
            const auto &b = std::get<BeamsplitterParams>(ins);
            if (b.i < 0 || b.j >= m || b.i >= b.j) {
                throw std::invalid_argument("Beamsplitter instruction modes out of range.");
            }
            apply_block_left(u, b.i, b.j, bs_block(b.theta, b.phi_t, b.phi_r));
        }
    }
    return TransferMatrix(std::move(u), 1e-9);
}

InstructionList decompose_special(const Fabric &f, double tol) {
    f.validate();
    InstructionList out;
    for (const auto &p : f.output_phases) {
        push_phase(out, p.i, p.phi);
    }
    const double half_pi = std::numbers::pi / 2;
    for (std::size_t l = f.layers.size(); l-- > 0;) {
        for (const auto &b : f.layers[l]) {
            BsClass cls = classify_bs(b.theta, tol);
            if (cls == BsClass::Generic) {
                out.emplace_back(b);
                continue;
            }
            double t = wrap_angle(b.theta);
            if (std::abs(t - std::round(t / half_pi) * half_pi) > kExactAngle) {
                throw std::invalid_argument(
                    "Beamsplitter on modes (" + std::to_string(b.i) + ", " + std::to_string(b.j) +
                    ") is close to a special angle but not exact; apply round_special first.");
            }
            if (cls == BsClass::Trivial) {
                // diag(e^{i phi_t} cos, e^{-i phi_t} cos) with cos = +-1.
                double flip = std::cos(t) < 0 ? std::numbers::pi : 0.0;
                push_phase(out, b.i, b.phi_t + flip);
                push_phase(out, b.j, -b.phi_t + flip);
            } else {
                // [[0, x], [y, 0]] = diag(x, y) S with x = -e^{-i phi_r} sin, y = e^{i phi_r} sin.
                double flip = std::sin(t) < 0 ? std::numbers::pi : 0.0;
                out.emplace_back(SwapInstruction{b.i, b.j});
                push_phase(out, b.i, -b.phi_r + std::numbers::pi + flip);
                push_phase(out, b.j, b.phi_r + flip);
            }
        }
    }
    return out;
}

CompiledCircuit commute_to_front(const InstructionList &list, int m) {
    CompiledCircuit c = CompiledCircuit::identity(m);
    // inverse[mode] = k with permutation[k] == mode.
    std::vector<int> inverse = c.permutation;
    for (const auto &ins : list) {
        if (const auto *b = std::get_if<BeamsplitterParams>(&ins)) {
            if (b->i < 0 || b->j >= m || b->i >= b->j) {
                throw std::invalid_argument("Beamsplitter instruction modes out of range.");
            }
            c.beamsplitters.push_back(*b);
        } else if (const auto *p = std::get_if<PhaseshifterParams>(&ins)) {
            if (p->i < 0 || p->i >= m) {
                throw std::invalid_argument("Phase instruction mode out of range.");
            }
            for (auto it = c.beamsplitters.rbegin(); it != c.beamsplitters.rend(); ++it) {
                if (it->i == p->i) {
                    it->phi_r -= p->phi;
                } else if (it->j == p->i) {
                    it->phi_r += p->phi;
                }
            }
            int k = inverse[p->i];
            c.phases[k] = wrap_angle(c.phases[k] + p->phi);
        } else {
            const auto &s = std::get<SwapInstruction>(ins);
            if (s.i < 0 || s.j < 0 || s.i >= m || s.j >= m || s.i == s.j) {
                throw std::invalid_argument("Swap instruction modes out of range.");
            }
            auto swap_label = [&](int mode) { return mode == s.i ? s.j : (mode == s.j ? s.i : mode); };
            for (auto &b : c.beamsplitters) {
                b = relabel(b, swap_label(b.i), swap_label(b.j));
            }
            for (int k = 0; k < m; k++) {
                c.permutation[k] = swap_label(c.permutation[k]);
            }
            std::swap(inverse[s.i], inverse[s.j]);
        }
    }
    for (auto &b : c.beamsplitters) {
        b.phi_r = wrap_angle(b.phi_r);
    }
    return c;
}

AbsorbedCircuit absorb_into_input(const CompiledCircuit &c, const Occupancy &input) {
    if (static_cast<int>(input.modes()) != c.m) {
        throw std::invalid_argument("Input occupancy length does not match the circuit.");
    }
    AbsorbedCircuit out;
    out.circuit = CompiledCircuit::identity(c.m);
    out.circuit.beamsplitters = c.beamsplitters;
    std::vector<int> counts(c.m);
    for (int k = 0; k < c.m; k++) {
        counts[c.permutation[k]] = input[k];
    }
    out.input = Occupancy(std::move(counts));
    return out;
}

AbsorbedCircuit absorb_into_input(const CompiledCircuit &c, const PureState &input) {
    if (input.size() != 1) {
        throw std::invalid_argument("Only a single Fock state input can absorb the phase and permutation layers.");
    }
    return absorb_into_input(c, input.amplitudes().begin()->first);
}

TransferMatrix circuit_matrix(const CompiledCircuit &c) {
    return instructions_matrix(circuit_instructions(c), c.m);
}

InstructionList circuit_instructions(const CompiledCircuit &c) {
    if (static_cast<int>(c.phases.size()) != c.m || static_cast<int>(c.permutation.size()) != c.m) {
        throw std::invalid_argument("Compiled circuit phase or permutation length differs from m.");
    }
    std::vector<bool> seen(c.m, false);
    for (int v : c.permutation) {
        if (v < 0 || v >= c.m || seen[v]) {
            throw std::invalid_argument("Compiled circuit permutation is not a bijection.");
        }
        seen[v] = true;
    }
    InstructionList out;
    for (int k = 0; k < c.m; k++) {
        push_phase(out, k, c.phases[k]);
    }
    // Realize the permutation as a sequence of swaps on the current labels.
    std::vector<int> where(c.m);  // where[k]: current mode holding input k
    std::vector<int> holder(c.m);  // holder[mode]: input currently there
    for (int k = 0; k < c.m; k++) {
        where[k] = k;
        holder[k] = k;
    }
    for (int k = 0; k < c.m; k++) {
        int target = c.permutation[k];
        int cur = where[k];
        if (cur != target) {
            int other = holder[target];
            out.emplace_back(SwapInstruction{std::min(cur, target), std::max(cur, target)});
            holder[cur] = other;
            where[other] = cur;
            holder[target] = k;
            where[k] = target;
        }
    }
    for (const auto &b : c.beamsplitters) {
        out.emplace_back(b);
    }
    return out;
}

CompiledCircuit compile_fabric(const Fabric &f, double tol) {
    return commute_to_front(decompose_special(f, tol), f.m);
}

}  // namespace heraldgen
