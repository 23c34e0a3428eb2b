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

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heraldgen {

using Complex = std::complex<double>;

/// Largest photon number for which factorial tables are kept.
inline constexpr int kMaxPhotons = 20;

/// Photon counts per mode. Ordering is lexicographic on the counts; every
/// enumeration and report in the library uses the *descending* order.
class Occupancy {
   public:
    Occupancy() = default;
    explicit Occupancy(std::vector<int> counts);
    Occupancy(std::initializer_list<int> counts);

    std::size_t modes() const { return counts_.size(); }
    int total() const;
    int operator[](std::size_t mode) const { return counts_[mode]; }
    const std::vector<int> &counts() const { return counts_; }

    /// Sub-vector of modes [first, first + count).
    Occupancy slice(std::size_t first, std::size_t count) const;
    /// Concatenation (this, other).
    Occupancy concat(const Occupancy &other) const;

    std::string str() const;

    auto operator<=>(const Occupancy &) const = default;
    bool operator==(const Occupancy &) const = default;

   private:
    std::vector<int> counts_;
};

/// Split of the modes into a signal block [0, signal_modes) followed by an
/// ancilla block, together with the target photon numbers of each block.
struct ModePartition {
    int signal_modes = 0;
    int ancilla_modes = 0;
    int signal_photons = 0;
    int ancilla_photons = 0;

    int modes() const { return signal_modes + ancilla_modes; }
    int photons() const { return signal_photons + ancilla_photons; }

    /// Validates the invariants and returns the partition.
    static ModePartition make(int signal_modes, int ancilla_modes, int signal_photons, int ancilla_photons);

    bool operator==(const ModePartition &) const = default;
};

/// Dense coefficient tensor of the creation-operator polynomial over a box of
/// per-mode sizes. Row-major: the last mode varies fastest.
class StateTensor {
   public:
    StateTensor() = default;
    explicit StateTensor(std::vector<int> dims);

    const std::vector<int> &dims() const { return dims_; }
    std::size_t modes() const { return dims_.size(); }
    std::size_t size() const { return data_.size(); }

    std::vector<Complex> &data() { return data_; }
    const std::vector<Complex> &data() const { return data_; }

    bool contains(const Occupancy &occ) const;
    std::size_t flat_index(const Occupancy &occ) const;
    Occupancy occupancy_at(std::size_t flat) const;

    Complex &at(const Occupancy &occ) { return data_[flat_index(occ)]; }
    Complex at(const Occupancy &occ) const { return contains(occ) ? data_[flat_index(occ)] : Complex{}; }

    /// Photon total that entries are meant to carry, when known.
    std::optional<int> total_filter;
    /// Set when a reduced per-mode cutoff was applied, so that entries with
    /// large single-mode occupations may be missing.
    bool approximate = false;

   private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::vector<Complex> data_;
};

/// Fock-basis amplitudes keyed by occupancy (descending order). May be
/// unnormalized.
class PureState {
   public:
    using Map = std::map<Occupancy, Complex, std::greater<>>;

    PureState() = default;
    explicit PureState(std::size_t modes) : modes_(modes) {}

    std::size_t modes() const { return modes_; }
    bool empty() const { return amps_.empty(); }
    std::size_t size() const { return amps_.size(); }

    /// Adds `amp` to the amplitude at `occ`.
    void add(const Occupancy &occ, Complex amp);
    void set(const Occupancy &occ, Complex amp);
    Complex amplitude(const Occupancy &occ) const;

    const Map &amplitudes() const { return amps_; }

    double norm2() const;
    PureState normalized() const;
    PureState scaled(Complex factor) const;

   private:
    std::size_t modes_ = 0;
    Map amps_;
};

/// <a|b> with the first argument conjugated.
Complex inner(const PureState &a, const PureState &b);

/// All m-mode occupancies of total n in lexicographically descending order.
/// Zero modes give the single empty occupancy when n = 0.
std::vector<Occupancy> enumerate_occupancies(int modes, int photons);

/// binomial(m + n - 1, n), the number of m-mode n-photon Fock states.
std::size_t fock_dimension(int modes, int photons);

double factorial(int k);

/// sqrt(prod_i n_i!).
double fock_normalization(const Occupancy &occ);

/// Fock amplitudes c_n = T_n * sqrt(prod n_i!). Exact zeros are omitted.
PureState amplitudes_from_tensor(const StateTensor &tensor);

/// Inverse of amplitudes_from_tensor on a box with the given dims; throws if
/// an amplitude falls outside the box.
StateTensor tensor_from_amplitudes(const PureState &state, std::vector<int> dims);

/// Bures angle in [0, pi/2]; invariant under rescaling of either argument.
double bures_angle(const PureState &a, const PureState &b);

/// Squared normalized overlap |<a|b>|^2 / (<a|a><b|b>).
double fidelity(const PureState &a, const PureState &b);

/// Dual-rail encoding of a k-qubit statevector onto 2k modes. Qubit 0 is the
/// most significant bit of the basis index and lives on modes (0, 1);
/// |0> -> |10>, |1> -> |01>.
PureState dual_rail_encode(std::span<const Complex> qubit_state);

/// Keeps only amplitudes with exactly the target photon number in each block.
PureState project_photon_split(const PureState &state, const ModePartition &partition);

}  // namespace heraldgen
