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

#include "heraldgen/fock.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace heraldgen {

namespace {

constexpr std::array<double, kMaxPhotons + 1> make_factorials() {
    std::array<double, kMaxPhotons + 1> out{};
    out[0] = 1.0;
    for (int k = 1; k <= kMaxPhotons; k++) {
        out[k] = out[k - 1] * k;
    }
    return out;
}

constexpr auto kFactorials = make_factorials();

void enumerate_rec(int mode, int remaining, std::vector<int> &cur, std::vector<Occupancy> &out) {
    if (mode + 1 == static_cast<int>(cur.size())) {
        cur[mode] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; k--) {
        cur[mode] = k;
        enumerate_rec(mode + 1, remaining - k, cur, out);
    }
}

}  // namespace

Occupancy::Occupancy(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) {
            throw std::invalid_argument("Occupancy counts must be non-negative.");
        }
    }
}

Occupancy::Occupancy(std::initializer_list<int> counts) : Occupancy(std::vector<int>(counts)) {
}

int Occupancy::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

Occupancy Occupancy::slice(std::size_t first, std::size_t count) const {
    if (first + count > counts_.size()) {
        throw std::out_of_range("Occupancy::slice out of range.");
    }
    return Occupancy(std::vector<int>(counts_.begin() + first, counts_.begin() + first + count));
}

Occupancy Occupancy::concat(const Occupancy &other) const {
    std::vector<int> out = counts_;
    out.insert(out.end(), other.counts_.begin(), other.counts_.end());
    return Occupancy(std::move(out));
}

std::string Occupancy::str() const {
    std::ostringstream ss;
    ss << "|";
    for (int c : counts_) {
        ss << c;
        if (c > 9) {
            ss << ",";
        }
    }
    ss << ">";
    return ss.str();
}

ModePartition ModePartition::make(int signal_modes, int ancilla_modes, int signal_photons, int ancilla_photons) {
    if (signal_modes < 0 || ancilla_modes < 0 || signal_modes + ancilla_modes < 1) {
        throw std::invalid_argument("ModePartition needs non-negative block sizes and at least one mode.");
    }
    if (signal_photons < 0 || ancilla_photons < 0) {
        throw std::invalid_argument("ModePartition photon targets must be non-negative.");
    }
    if ((signal_modes == 0 && signal_photons > 0) || (ancilla_modes == 0 && ancilla_photons > 0)) {
        throw std::invalid_argument("ModePartition assigns photons to an empty block.");
    }
    return ModePartition{signal_modes, ancilla_modes, signal_photons, ancilla_photons};
}

StateTensor::StateTensor(std::vector<int> dims) : dims_(std::move(dims)), strides_(dims_.size()) {
    std::size_t n = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
        if (dims_[k] < 1) {
            throw std::invalid_argument("StateTensor dims must be positive.");
        }
        strides_[k] = n;
        n *= static_cast<std::size_t>(dims_[k]);
    }
    data_.assign(n, Complex{});
}

bool StateTensor::contains(const Occupancy &occ) const {
    if (occ.modes() != dims_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < dims_.size(); k++) {
        if (occ[k] >= dims_[k]) {
            return false;
        }
    }
    return true;
}

std::size_t StateTensor::flat_index(const Occupancy &occ) const {
    if (!contains(occ)) {
        throw std::out_of_range("Occupancy " + occ.str() + " lies outside the tensor box.");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); k++) {
        idx += static_cast<std::size_t>(occ[k]) * strides_[k];
    }
    return idx;
}

Occupancy StateTensor::occupancy_at(std::size_t flat) const {
    std::vector<int> out(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); k++) {
        out[k] = static_cast<int>(flat / strides_[k]);
        flat %= strides_[k];
    }
    return Occupancy(std::move(out));
}

void PureState::add(const Occupancy &occ, Complex amp) {
    if (occ.modes() != modes_) {
        throw std::invalid_argument("PureState::add mode count mismatch.");
    }
    amps_[occ] += amp;
}

void PureState::set(const Occupancy &occ, Complex amp) {
    if (occ.modes() != modes_) {
        throw std::invalid_argument("PureState::set mode count mismatch.");
    }
    amps_[occ] = amp;
}

Complex PureState::amplitude(const Occupancy &occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex{} : it->second;
}

double PureState::norm2() const {
    double total = 0;
    for (const auto &[occ, amp] : amps_) {
        total += std::norm(amp);
    }
    return total;
}

PureState PureState::normalized() const {
    double n2 = norm2();
    if (!(n2 > 0)) {
        throw std::invalid_argument("Cannot normalize a zero-norm state.");
    }
    return scaled(1.0 / std::sqrt(n2));
}

PureState PureState::scaled(Complex factor) const {
    PureState out(modes_);
    for (const auto &[occ, amp] : amps_) {
        out.amps_.emplace(occ, amp * factor);
    }
    return out;
}

Complex inner(const PureState &a, const PureState &b) {
    const auto &small = a.size() <= b.size() ? a : b;
    const auto &large = a.size() <= b.size() ? b : a;
    Complex total{};
    for (const auto &[occ, amp] : small.amplitudes()) {
        auto it = large.amplitudes().find(occ);
        if (it != large.amplitudes().end()) {
            total += std::conj(amp) * it->second;
        }
    }
    // The loop conjugated whichever side was smaller.
    return &small == &a ? total : std::conj(total);
}

std::vector<Occupancy> enumerate_occupancies(int modes, int photons) {
    if (modes < 0 || photons < 0) {
        throw std::invalid_argument("enumerate_occupancies requires modes >= 0 and photons >= 0.");
    }
    std::vector<Occupancy> out;
    if (modes == 0) {
        if (photons == 0) {
            out.emplace_back(std::vector<int>{});
        }
        return out;
    }
    out.reserve(fock_dimension(modes, photons));
    std::vector<int> cur(modes, 0);
    enumerate_rec(0, photons, cur, out);
    return out;
}

std::size_t fock_dimension(int modes, int photons) {
    // binomial(modes + photons - 1, photons) via the multiplicative formula.
    std::size_t result = 1;
    for (int k = 1; k <= photons; k++) {
        result = result * static_cast<std::size_t>(modes - 1 + k) / static_cast<std::size_t>(k);
    }
    return result;
}

double factorial(int k) {
    if (k < 0 || k > kMaxPhotons) {
        throw std::out_of_range("factorial argument outside [0, " + std::to_string(kMaxPhotons) + "].");
    }
    return kFactorials[k];
}

double fock_normalization(const Occupancy &occ) {
    if (occ.total() > kMaxPhotons) {
        throw std::out_of_range("Photon number exceeds the supported maximum of " + std::to_string(kMaxPhotons) + ".");
    }
    double p = 1;
    for (int c : occ.counts()) {
        p *= kFactorials[c];
    }
    return std::sqrt(p);
}

PureState amplitudes_from_tensor(const StateTensor &tensor) {
    PureState out(tensor.modes());
    const auto &data = tensor.data();
    for (std::size_t k = 0; k < data.size(); k++) {
        if (data[k] == Complex{}) {
            continue;
        }
        Occupancy occ = tensor.occupancy_at(k);
        out.set(occ, data[k] * fock_normalization(occ));
    }
    return out;
}

StateTensor tensor_from_amplitudes(const PureState &state, std::vector<int> dims) {
    StateTensor out(std::move(dims));
    if (out.modes() != state.modes()) {
        throw std::invalid_argument("tensor_from_amplitudes mode count mismatch.");
    }
    for (const auto &[occ, amp] : state.amplitudes()) {
        out.at(occ) = amp / fock_normalization(occ);
    }
    return out;
}

double fidelity(const PureState &a, const PureState &b) {
    double na = a.norm2();
    double nb = b.norm2();
    if (!(na > 0) || !(nb > 0)) {
        throw std::invalid_argument("fidelity of a zero-norm state is undefined.");
    }
    return std::min(1.0, std::norm(inner(a, b)) / (na * nb));
}

double bures_angle(const PureState &a, const PureState &b) {
    double na = a.norm2();
    double nb = b.norm2();
    if (!(na > 0) || !(nb > 0)) {
        throw std::invalid_argument("Bures angle of a zero-norm state is undefined.");
    }
    double r = std::abs(inner(a, b)) / std::sqrt(na * nb);
    return std::acos(std::clamp(r, 0.0, 1.0));
}

PureState dual_rail_encode(std::span<const Complex> qubit_state) {
    std::size_t len = qubit_state.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("dual_rail_encode needs a statevector whose length is a power of two.");
    }
    int qubits = std::countr_zero(len);
    PureState out(2 * static_cast<std::size_t>(qubits));
    bool any = false;
    for (std::size_t x = 0; x < len; x++) {
        if (qubit_state[x] == Complex{}) {
            continue;
        }
        any = true;
        std::vector<int> counts(2 * qubits);
        for (int q = 0; q < qubits; q++) {
            int bit = static_cast<int>((x >> (qubits - 1 - q)) & 1);
            counts[2 * q] = 1 - bit;
            counts[2 * q + 1] = bit;
        }
        out.set(Occupancy(std::move(counts)), qubit_state[x]);
    }
    if (!any) {
        throw std::invalid_argument("dual_rail_encode needs a nonzero statevector.");
    }
    return out;
}

PureState project_photon_split(const PureState &state, const ModePartition &partition) {
    if (static_cast<int>(state.modes()) != partition.modes()) {
        throw std::invalid_argument("project_photon_split: state and partition disagree on mode count.");
    }
    PureState out(state.modes());
    for (const auto &[occ, amp] : state.amplitudes()) {
        int sig = 0;
        for (int k = 0; k < partition.signal_modes; k++) {
            sig += occ[k];
        }
        int anc = occ.total() - sig;
        if (sig == partition.signal_photons && anc == partition.ancilla_photons) {
            out.set(occ, amp);
        }
    }
    return out;
}

}  // namespace heraldgen
