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


#include "heraldgen/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "heraldgen/graph.hpp"

namespace heraldgen {

namespace {

using RayKey = std::vector<std::int64_t>;

struct RayKeyHash {
    std::size_t operator()(const RayKey &k) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : k) {
            h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
        }
        return h;
    }
};

// Phase- and norm-normalized rounding of a vector; equal keys mean equal rays
// for the exactly representable amplitudes of stabilizer states.
template <typename Vec>
RayKey ray_key(const Vec &psi) {
    double peak = 0;
    double norm2 = 0;
    for (const auto &a : psi) {
        peak = std::max(peak, std::abs(a));
        norm2 += std::norm(a);
    }
    Complex phase{1.0, 0.0};
    for (const auto &a : psi) {
        if (std::abs(a) > 1e-6 * peak) {
            phase = std::conj(a) / std::abs(a);
            break;
        }
    }
    double scale = 1.0 / std::sqrt(norm2);
    RayKey key;
    key.reserve(2 * psi.size());
    for (const auto &a : psi) {
        Complex v = a * phase * scale;
        key.push_back(std::llround(v.real() * 1e8));
        key.push_back(std::llround(v.imag() * 1e8));
    }
    return key;
}

int qubit_count(std::size_t len) {
    if (len < 2 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("Qubit statevector length must be a power of two.");
    }
    int n = 0;
    while ((std::size_t{1} << n) < len) {
        n++;
    }
    return n;
}

void apply_1q(std::vector<Complex> &psi, int n, int q, const Eigen::Matrix2cd &g) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t x = 0; x < psi.size(); x++) {
        if (x & bit) {
            continue;
        }
        Complex a = psi[x];
        Complex b = psi[x | bit];
        psi[x] = g(0, 0) * a + g(0, 1) * b;
        psi[x | bit] = g(1, 0) * a + g(1, 1) * b;
    }
}

void apply_cz(std::vector<Complex> &psi, int n, int a, int b) {
    const std::size_t ba = std::size_t{1} << (n - 1 - a);
    const std::size_t bb = std::size_t{1} << (n - 1 - b);
    for (std::size_t x = 0; x < psi.size(); x++) {
        if ((x & ba) && (x & bb)) {
            psi[x] = -psi[x];
        }
    }
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::numbers::sqrt2;
}

Eigen::Matrix2cd phase_gate() {
    Eigen::Matrix2cd s;
    s << 1, 0, 0, Complex(0, 1);
    return s;
}

// Visits every image of psi under the 24^n local Clifford products.
template <typename Fn>
void for_each_local_clifford(const std::vector<Complex> &psi, int n, int q, Fn &&visit) {
    if (q == n) {
        visit(psi);
        return;
    }
    for (const auto &g : clifford1_group()) {
        std::vector<Complex> next = psi;
        apply_1q(next, n, q, g);
        for_each_local_clifford(next, n, q + 1, visit);
    }
}

std::vector<std::vector<Complex>> clifford_images(std::span<const Complex> psi, bool allow_long) {
    int n = qubit_count(psi.size());
    if (n > 5 || (n == 5 && !allow_long)) {
        throw std::invalid_argument(
            "Local Clifford orbits are limited to n <= 4 qubits (n = 5 needs the long-running flag).");
    }
    std::unordered_set<RayKey, RayKeyHash> seen;
    std::vector<std::vector<Complex>> out;
    for_each_local_clifford(std::vector<Complex>(psi.begin(), psi.end()), n, 0, [&](const std::vector<Complex> &v) {
        if (seen.insert(ray_key(v)).second) {
            out.push_back(v);
        }
    });
    return out;
}

TargetSet encode_all(const std::vector<std::vector<Complex>> &states, Equivalence provenance) {
    TargetSet out;
    out.provenance = provenance;
    for (const auto &v : states) {
        out.states.push_back(dual_rail_encode(v));
    }
    return out;
}

}  // namespace

const char *equivalence_name(Equivalence e) {
    switch (e) {
        case Equivalence::Single:
            return "single";
        case Equivalence::PauliOrbit:
            return "pauli";
        case Equivalence::CliffordOrbit:
            return "clifford";
    }
    return "single";
}

Equivalence parse_equivalence(const std::string &name) {
    if (name == "single") {
        return Equivalence::Single;
    }
    if (name == "pauli") {
        return Equivalence::PauliOrbit;
    }
    if (name == "clifford") {
        return Equivalence::CliffordOrbit;
    }
    throw std::invalid_argument("Unknown equivalence '" + name + "' (expected single, pauli or clifford).");
}

TargetSet single_target(std::span<const Complex> psi) {
    qubit_count(psi.size());
    return TargetSet{{dual_rail_encode(psi)}, Equivalence::Single};
}

TargetSet pauli_orbit(std::span<const Complex> psi) {
    int n = qubit_count(psi.size());
    if (n > 8) {
        throw std::invalid_argument("pauli_orbit supports at most 8 qubits.");
    }
    std::vector<Complex> base(psi.begin(), psi.end());
    std::unordered_set<RayKey, RayKeyHash> seen;
    std::vector<std::vector<Complex>> states;
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; code++) {
        PauliString p = PauliString::identity(n);
        for (int q = 0; q < n; q++) {
            p.ops[q] = kLetters[(code >> (2 * (n - 1 - q))) & 3];
        }
        auto v = p.apply(base);
        if (seen.insert(ray_key(v)).second) {
            states.push_back(std::move(v));
        }
    }
    return encode_all(states, Equivalence::PauliOrbit);
}

const std::vector<Eigen::Matrix2cd> &clifford1_group() {
    static const std::vector<Eigen::Matrix2cd> group = [] {
        const Eigen::Matrix2cd gens[2] = {hadamard(), phase_gate()};
        auto key = [](const Eigen::Matrix2cd &m) {
            return ray_key(std::vector<Complex>{m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
        };
        std::vector<Eigen::Matrix2cd> elems{Eigen::Matrix2cd::Identity()};
        std::unordered_set<RayKey, RayKeyHash> seen{key(elems[0])};
        for (std::size_t k = 0; k < elems.size(); k++) {
            for (const auto &g : gens) {
                Eigen::Matrix2cd next = g * elems[k];
                if (seen.insert(key(next)).second) {
                    elems.push_back(next);
                }
            }
        }
        if (elems.size() != 24) {
            throw std::logic_error("Single-qubit Clifford closure did not produce 24 elements.");
        }
        return elems;
    }();
    return group;
}

std::size_t clifford1_orbit_size(std::span<const Complex> psi, bool allow_long) {
    return clifford_images(psi, allow_long).size();
}

TargetSet clifford1_orbit(std::span<const Complex> psi, bool allow_long) {
    return encode_all(clifford_images(psi, allow_long), Equivalence::CliffordOrbit);
}

uint128 stabilizer_count(int n) {
    if (n < 0 || n > 10) {
        throw std::invalid_argument("stabilizer_count supports 0 <= n <= 10.");
    }
    uint128 out = uint128{1} << n;
    for (int i = 1; i <= n; i++) {
        out *= (uint128{1} << i) + 1;
    }
    return out;
}

std::string to_string(uint128 value) {
    if (value == 0) {
        return "0";
    }
    std::string s;
    while (value > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

OrbitPartitionReport verify_orbit_partition(int n) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("verify_orbit_partition supports 1 <= n <= 4.");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> zero(dim);
    zero[0] = 1;

    std::unordered_map<RayKey, std::size_t, RayKeyHash> index;
    std::vector<std::vector<Complex>> states{zero};
    index.emplace(ray_key(zero), 0);
    const Eigen::Matrix2cd h = hadamard();
    const Eigen::Matrix2cd s = phase_gate();
    for (std::size_t k = 0; k < states.size(); k++) {
        std::vector<std::vector<Complex>> next;
        for (int q = 0; q < n; q++) {
            auto a = states[k];
            apply_1q(a, n, q, h);
            next.push_back(std::move(a));
            auto b = states[k];
            apply_1q(b, n, q, s);
            next.push_back(std::move(b));
            for (int r = q + 1; r < n; r++) {
                auto c = states[k];
                apply_cz(c, n, q, r);
                next.push_back(std::move(c));
            }
        }
        for (auto &v : next) {
            if (index.emplace(ray_key(v), states.size()).second) {
                states.push_back(std::move(v));
            }
        }
    }

    OrbitPartitionReport report;
    report.qubits = n;
    report.total_states = states.size();
    std::size_t group_order = 1;
    for (int q = 0; q < n; q++) {
        group_order *= 24;
    }
    std::vector<bool> assigned(states.size(), false);
    std::size_t covered = 0;
    for (std::size_t k = 0; k < states.size(); k++) {
        if (assigned[k]) {
            continue;
        }
        std::unordered_set<RayKey, RayKeyHash> orbit;
        for_each_local_clifford(states[k], n, 0, [&](const std::vector<Complex> &v) {
            auto key = ray_key(v);
            if (orbit.insert(key).second) {
                auto it = index.find(key);
                if (it == index.end()) {
                    throw std::logic_error("Local Clifford image is missing from the stabilizer enumeration.");
                }
                assigned[it->second] = true;
            }
        });
        covered += orbit.size();
        report.classes.push_back(OrbitClass{orbit.size(), group_order / orbit.size(), states[k]});
    }
    std::stable_sort(report.classes.begin(), report.classes.end(), [](const OrbitClass &a, const OrbitClass &b) {
        return a.size > b.size;
    });
    report.consistent = covered == report.total_states &&
                        static_cast<uint128>(report.total_states) == stabilizer_count(n);
    return report;
}

}  // namespace heraldgen
