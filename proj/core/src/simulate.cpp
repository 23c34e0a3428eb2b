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


#include "heraldgen/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heraldgen/polymul.hpp"

namespace heraldgen {

namespace {

void apply_noise_floor(std::vector<Complex> &values, double floor) {
    double peak = 0;
    for (const auto &v : values) {
        peak = std::max(peak, std::abs(v));
    }
    double cut = floor * peak;
    for (auto &v : values) {
        if (std::abs(v) < cut) {
            v = 0;
        }
    }
}

StateTensor run_engine(const PolyMulEngine &engine, const Eigen::MatrixXcd &u, const SimOptions &options) {
    auto values = engine.evaluate(u);
    apply_noise_floor(values, options.noise_floor);
    StateTensor out(engine.dims());
    for (std::size_t s = 0; s < values.size(); s++) {
        out.data()[engine.slice()[s].flat] = values[s];
    }
    out.total_filter = engine.input().total();
    out.approximate = engine.truncated();
    return out;
}

void check_input(const TransferMatrix &u, const Occupancy &input) {
    if (static_cast<int>(input.modes()) != u.modes()) {
        throw std::invalid_argument("Input occupancy length does not match the transfer matrix size.");
    }
    if (input.total() > kMaxPhotons) {
        throw std::invalid_argument("Photon number exceeds the supported maximum.");
    }
}

}  // namespace

double unitarity_deviation(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

TransferMatrix::TransferMatrix(Eigen::MatrixXcd u, double tolerance) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) {
        throw std::invalid_argument("TransferMatrix must be a non-empty square matrix.");
    }
    if (!u_.allFinite()) {
        throw std::invalid_argument("TransferMatrix has non-finite entries.");
    }
    double dev = unitarity_deviation(u_);
    if (dev > tolerance) {
        std::ostringstream msg;
        msg << "TransferMatrix is not unitary: max |U^dag U - I| = " << dev << " exceeds " << tolerance << ".";
        throw std::invalid_argument(msg.str());
    }
}

TransferMatrix TransferMatrix::identity(int modes) {
    return TransferMatrix(Eigen::MatrixXcd::Identity(modes, modes));
}

MemoryBudgetError::MemoryBudgetError(std::size_t required, std::size_t cap)
    : std::runtime_error(
          "Simulation needs " + std::to_string(required) + " bytes, above the memory cap of " + std::to_string(cap) +
          " bytes."),
      required_(required) {
}

StateTensor simulate_full(const TransferMatrix &u, const Occupancy &input, const SimOptions &options) {
    check_input(u, input);
    int n = input.total();
    int dim = n + 1;
    if (options.cutoff) {
        if (*options.cutoff < 0) {
            throw std::invalid_argument("cutoff must be non-negative.");
        }
        dim = std::min(dim, *options.cutoff + 1);
    }
    PolyMulEngine engine(input, {ModeBlock{0, u.modes(), dim, n}}, options.memory_cap_bytes);
    return run_engine(engine, u.matrix(), options);
}

StateTensor simulate_restricted(
    const TransferMatrix &u, const Occupancy &input, const ModePartition &partition, const SimOptions &options) {
    check_input(u, input);
    if (partition.modes() != u.modes() || partition.photons() != input.total()) {
        throw std::invalid_argument("Partition does not match the transfer matrix modes or the input photon number.");
    }
    int ds = options.signal_dim.value_or(partition.signal_photons + 1);
    int da = options.ancilla_dim.value_or(partition.ancilla_photons + 1);
    if (options.cutoff) {
        if (*options.cutoff < 0) {
            throw std::invalid_argument("cutoff must be non-negative.");
        }
        ds = std::min(ds, *options.cutoff + 1);
        da = std::min(da, *options.cutoff + 1);
    } else if (
        (partition.signal_modes > 0 && ds < partition.signal_photons + 1) ||
        (partition.ancilla_modes > 0 && da < partition.ancilla_photons + 1)) {
        std::ostringstream msg;
        msg << "Restricted box too small: need signal dim >= " << partition.signal_photons + 1
            << " and ancilla dim >= " << partition.ancilla_photons + 1 << ", got " << ds << " and " << da << ".";
        throw std::invalid_argument(msg.str());
    }
    PolyMulEngine engine(
        input,
        {ModeBlock{0, partition.signal_modes, ds, partition.signal_photons},
         ModeBlock{partition.signal_modes, partition.ancilla_modes, da, partition.ancilla_photons}},
        options.memory_cap_bytes);
    return run_engine(engine, u.matrix(), options);
}

std::vector<HeraldedOutcome> herald_decompose(const StateTensor &tensor, const ModePartition &partition) {
    if (static_cast<int>(tensor.modes()) != partition.modes()) {
        throw std::invalid_argument("herald_decompose: partition does not match the tensor modes.");
    }
    auto signal_configs = enumerate_occupancies(partition.signal_modes, partition.signal_photons);
    std::vector<HeraldedOutcome> out;
    for (const auto &anc : enumerate_occupancies(partition.ancilla_modes, partition.ancilla_photons)) {
        PureState cond(static_cast<std::size_t>(partition.signal_modes));
        for (const auto &sig : signal_configs) {
            Occupancy full = sig.concat(anc);
            if (!tensor.contains(full)) {
                continue;
            }
            Complex t = tensor.at(full);
            if (t != Complex{}) {
                cond.set(sig, t * fock_normalization(full));
            }
        }
        double p = cond.norm2();
        if (p > 0) {
            out.push_back(HeraldedOutcome{anc, p, cond.normalized()});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const HeraldedOutcome &a, const HeraldedOutcome &b) {
        if (a.probability != b.probability) {
            return a.probability > b.probability;
        }
        return a.ancilla_pattern > b.ancilla_pattern;
    });
    return out;
}

std::vector<HeraldedOutcome> herald_all_splits(const StateTensor &tensor, int signal_modes) {
    if (!tensor.total_filter) {
        throw std::invalid_argument("herald_all_splits needs a tensor with a known photon total.");
    }
    int m = static_cast<int>(tensor.modes());
    int n = *tensor.total_filter;
    std::vector<HeraldedOutcome> out;
    for (int ns = n; ns >= 0; ns--) {
        if ((signal_modes == 0 && ns > 0) || (signal_modes == m && ns < n)) {
            continue;
        }
        auto part = ModePartition::make(signal_modes, m - signal_modes, ns, n - ns);
        auto chunk = herald_decompose(tensor, part);
        out.insert(out.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    }
    std::stable_sort(out.begin(), out.end(), [](const HeraldedOutcome &a, const HeraldedOutcome &b) {
        if (a.probability != b.probability) {
            return a.probability > b.probability;
        }
        return a.ancilla_pattern > b.ancilla_pattern;
    });
    return out;
}

SuccessSummary success_probability(
    const std::vector<HeraldedOutcome> &outcomes, const std::vector<PureState> &targets, double threshold) {
    if (targets.empty()) {
        throw std::invalid_argument("success_probability: target set is empty.");
    }
    if (!(threshold > 0 && threshold <= 1)) {
        throw std::invalid_argument("success_probability: threshold must lie in (0, 1].");
    }
    SuccessSummary out;
    for (std::size_t k = 0; k < outcomes.size(); k++) {
        HeraldMatch best{k, 0, -1};
        for (std::size_t t = 0; t < targets.size(); t++) {
            double f = fidelity(targets[t], outcomes[k].conditional_state);
            if (f > best.fidelity) {
                best.target = t;
                best.fidelity = f;
            }
        }
        if (best.fidelity >= threshold) {
            out.probability += outcomes[k].probability;
            out.matched++;
            out.matches.push_back(best);
        }
    }
    return out;
}

}  // namespace heraldgen
