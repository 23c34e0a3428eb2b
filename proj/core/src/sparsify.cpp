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


#include "heraldgen/sparsify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "heraldgen/optim.hpp"

namespace heraldgen {

namespace {

struct BlockRef {
    int i = 0;
    int j = 0;
    double theta = 0, phi_t = 0, phi_r = 0;
};

std::vector<BlockRef> fabric_blocks(const Fabric &f) {
    std::vector<BlockRef> out;
    for (const auto &layer : f.layers) {
        for (const auto &b : layer) {
            out.push_back(BlockRef{b.i, b.j, b.theta, b.phi_t, b.phi_r});
        }
    }
    return out;
}

struct StageTwoRun {
    int index = 0;
    Fabric fabric;
    std::vector<double> trace;
    double fidelity_loss = 0;
    int count = 0;
    bool preserves = false;
    std::vector<HeraldDelta> deltas;
};

std::vector<HeraldDelta> herald_deltas(
    const Fabric &f,
    const Occupancy &input,
    const ModePartition &partition,
    const std::vector<PureState> &targets,
    const std::vector<PreservedHerald> &preserve,
    std::size_t memory_cap_bytes) {
    SimOptions opts;
    opts.memory_cap_bytes = memory_cap_bytes;
    auto outcomes = herald_decompose(simulate_restricted(fabric_matrix(f), input, partition, opts), partition);
    std::vector<HeraldDelta> out;
    for (const auto &h : preserve) {
        HeraldDelta d{h.pattern, h.probability, 0, 0};
        for (const auto &o : outcomes) {
            if (o.ancilla_pattern == h.pattern) {
                d.after = o.probability;
                d.fidelity = fidelity(targets[h.target], o.conditional_state);
                break;
            }
        }
        out.push_back(d);
    }
    return out;
}

bool gate_passes(const std::vector<HeraldDelta> &deltas, const SparsifyConfig &cfg) {
    for (const auto &d : deltas) {
        if (std::abs(d.after - d.before) > cfg.preserve_tol || d.fidelity < cfg.fidelity_threshold) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<BsFlag>> classify_flags(const Fabric &f, double tau) {
    std::vector<std::vector<BsFlag>> out;
    for (const auto &layer : f.layers) {
        std::vector<BsFlag> row;
        for (const auto &b : layer) {
            switch (classify_bs(b.theta, tau)) {
                case BsClass::Trivial:
                    row.push_back(BsFlag::RoundedTrivial);
                    break;
                case BsClass::SwapEquivalent:
                    row.push_back(BsFlag::RoundedSwap);
                    break;
                case BsClass::Generic:
                    row.push_back(BsFlag::Kept);
                    break;
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

void SparsifyConfig::validate() const {
    if (!(lambda_reg >= 0) || !(epsilon >= 0) || !(tau > 0) || !(lr > 0)) {
        throw std::invalid_argument("Sparsify needs lambda_reg >= 0, epsilon >= 0, tau > 0 and lr > 0.");
    }
    if (max_iters < 1 || restarts < 1 || workers < 0) {
        throw std::invalid_argument("Sparsify needs max_iters >= 1, restarts >= 1 and workers >= 0.");
    }
    if (!(fidelity_threshold > 0 && fidelity_threshold <= 1) || !(preserve_tol >= 0)) {
        throw std::invalid_argument("Sparsify needs fidelity_threshold in (0, 1] and preserve_tol >= 0.");
    }
}

const char *fidelity_mode_name(FidelityMode m) {
    return m == FidelityMode::FullOutput ? "full" : "projected";
}

FidelityMode parse_fidelity_mode(const std::string &name) {
    if (name == "full") {
        return FidelityMode::FullOutput;
    }
    if (name == "projected") {
        return FidelityMode::ProjectedOutput;
    }
    throw std::invalid_argument("Unknown fidelity mode '" + name + "' (expected full or projected).");
}

const char *bs_flag_name(BsFlag f) {
    switch (f) {
        case BsFlag::Kept:
            return "kept";
        case BsFlag::RoundedTrivial:
            return "rounded_trivial";
        case BsFlag::RoundedSwap:
            return "rounded_swap";
    }
    return "kept";
}

FidelityObjective::FidelityObjective(
    const PureState &reference,
    const ModePartition &partition,
    const Occupancy &input,
    std::size_t memory_cap_bytes,
    FidelityMode mode)
    : engine_(
          input,
          {ModeBlock{0, partition.signal_modes, partition.signal_photons + 1, partition.signal_photons},
           ModeBlock{partition.signal_modes, partition.ancilla_modes, partition.ancilla_photons + 1,
                     partition.ancilla_photons}},
          memory_cap_bytes),
      mode_(mode) {
    if (static_cast<int>(reference.modes()) != partition.modes()) {
        throw std::invalid_argument("Reference state and partition disagree on mode count.");
    }
    const auto &configs = engine_.block_configs();
    for (const auto &e : engine_.slice()) {
        Occupancy occ;
        for (std::size_t b = 0; b < configs.size(); b++) {
            occ = occ.concat(configs[b][e.config[b]]);
        }
        reference_.push_back(reference.amplitude(occ));
    }
    double n2 = 0;
    for (const auto &c : reference_) {
        n2 += std::norm(c);
    }
    reference_norm_ = std::sqrt(n2);
    if (!(reference_norm_ > 0)) {
        throw std::invalid_argument("Projected reference state has zero norm.");
    }
}

double FidelityObjective::value(const Eigen::MatrixXcd &u) const {
    Eigen::MatrixXcd unused;
    return value_and_grad_u(u, unused);
}

double FidelityObjective::value_and_grad_u(const Eigen::MatrixXcd &u, Eigen::MatrixXcd &w) const {
    const auto t = engine_.evaluate(u);
    const auto &slice = engine_.slice();
    std::vector<Complex> c(slice.size());
    Complex o{};
    double out_norm2 = 0;
    for (std::size_t s = 0; s < slice.size(); s++) {
        c[s] = t[s] * slice[s].normalization;
        o += std::conj(reference_[s]) * c[s];
        out_norm2 += std::norm(c[s]);
    }
    // The full output has unit norm.
    double out_norm = mode_ == FidelityMode::FullOutput ? 1.0 : std::sqrt(out_norm2);
    w = Eigen::MatrixXcd::Zero(u.rows(), u.cols());
    if (!(out_norm > 0)) {
        return std::numbers::pi / 2;
    }
    double r = std::min(std::abs(o) / (reference_norm_ * out_norm), 1.0);
    double angle = std::acos(r);
    double one_minus = 1 - r * r;
    if (one_minus > 1e-14 && std::abs(o) > 0) {
        double dangle_dr = -1 / std::sqrt(one_minus);
        Complex a = o / (2 * std::abs(o) * reference_norm_ * out_norm);
        double b = mode_ == FidelityMode::FullOutput ? 0.0 : r / (2 * out_norm2);
        std::vector<Complex> cot(slice.size());
        for (std::size_t s = 0; s < slice.size(); s++) {
            cot[s] = dangle_dr * (a * reference_[s] - b * c[s]) * slice[s].normalization;
        }
        w = engine_.pullback(u, cot);
    }
    return angle;
}

double fidelity_loss(const Fabric &f, const PureState &reference, const ModePartition &partition, const Occupancy &input) {
    return FidelityObjective(reference, partition, input, std::size_t{8} << 30).value(fabric_matrix(f).matrix());
}

double regularization_penalty(const Fabric &f) {
    double total = 0;
    for (const auto &layer : f.layers) {
        for (const auto &b : layer) {
            total += std::abs(std::sin(2 * b.theta));
        }
    }
    return total;
}

Fabric round_special(const Fabric &f, double tau) {
    if (!(tau > 0)) {
        throw std::invalid_argument("round_special needs tau > 0.");
    }
    Fabric out = f;
    const double half_pi = std::numbers::pi / 2;
    for (auto &layer : out.layers) {
        for (auto &b : layer) {
            if (classify_bs(b.theta, tau) != BsClass::Generic) {
                b.theta = std::round(wrap_angle(b.theta) / half_pi) * half_pi;
            }
        }
    }
    return out;
}

int count_nontrivial(const Fabric &f, double tau) {
    int n = 0;
    for (const auto &layer : f.layers) {
        for (const auto &b : layer) {
            n += classify_bs(b.theta, tau) == BsClass::Generic;
        }
    }
    return n;
}

Eigen::VectorXd fabric_parameters(const Fabric &f) {
    Eigen::VectorXd p(3 * static_cast<Eigen::Index>(f.beamsplitter_count()) + f.m);
    Eigen::Index k = 0;
    for (const auto &layer : f.layers) {
        for (const auto &b : layer) {
            p(k++) = b.theta;
            p(k++) = b.phi_t;
            p(k++) = b.phi_r;
        }
    }
    for (const auto &ph : f.output_phases) {
        p(k++) = ph.phi;
    }
    return p;
}

Fabric fabric_from_parameters(const Fabric &layout, const Eigen::VectorXd &params) {
    if (params.size() != 3 * static_cast<Eigen::Index>(layout.beamsplitter_count()) + layout.m) {
        throw std::invalid_argument("Fabric parameter vector has the wrong length.");
    }
    Fabric f = layout;
    Eigen::Index k = 0;
    for (auto &layer : f.layers) {
        for (auto &b : layer) {
            b.theta = params(k++);
            b.phi_t = params(k++);
            b.phi_r = params(k++);
        }
    }
    for (auto &ph : f.output_phases) {
        ph.phi = params(k++);
    }
    return f;
}

Eigen::VectorXd fabric_pullback(const Fabric &f, const Eigen::MatrixXcd &w) {
    const int m = f.m;
    const auto blocks = fabric_blocks(f);
    const std::size_t nb = blocks.size();
    // suffix[k] = B_k ... B_last D, so that U = prefix_k B_k suffix[k + 1].
    std::vector<Eigen::MatrixXcd> suffix(nb + 1);
    suffix[nb] = Eigen::MatrixXcd::Zero(m, m);
    for (const auto &ph : f.output_phases) {
        suffix[nb](ph.i, ph.i) = std::polar(1.0, ph.phi);
    }
    for (std::size_t k = nb; k-- > 0;) {
        suffix[k] = suffix[k + 1];
        const auto &b = blocks[k];
        apply_block_left(suffix[k], b.i, b.j, bs_block(b.theta, b.phi_t, b.phi_r));
    }
    const Eigen::MatrixXcd wt = w.transpose();
    Eigen::VectorXd grad(3 * static_cast<Eigen::Index>(nb) + m);
    Eigen::MatrixXcd prefix = Eigen::MatrixXcd::Identity(m, m);
    const Complex I(0, 1);
    for (std::size_t k = 0; k < nb; k++) {
        const auto &b = blocks[k];
        // Rows {i, j} of suffix[k + 1] times W^T times columns {i, j} of prefix.
        Eigen::Matrix<Complex, Eigen::Dynamic, 2> wp(m, 2);
        wp.col(0) = wt * prefix.col(b.i);
        wp.col(1) = wt * prefix.col(b.j);
        Eigen::Matrix2cd g;
        for (int r = 0; r < 2; r++) {
            int row = r == 0 ? b.i : b.j;
            for (int c = 0; c < 2; c++) {
                g(r, c) = suffix[k + 1].row(row) * wp.col(c);
            }
        }
        double cs = std::cos(b.theta), sn = std::sin(b.theta);
        Complex et = std::polar(1.0, b.phi_t), er = std::polar(1.0, b.phi_r);
        Eigen::Matrix2cd d_theta, d_t, d_r;
        d_theta << -et * sn, -std::conj(er) * cs, er * cs, -std::conj(et) * sn;
        d_t << I * et * cs, 0, 0, -I * std::conj(et) * cs;
        d_r << 0, I * std::conj(er) * sn, I * er * sn, 0;
        // tr(G dB) with G indexed (block column, block row).
        auto contract = [&](const Eigen::Matrix2cd &db) {
            Complex acc{};
            for (int a = 0; a < 2; a++) {
                for (int c = 0; c < 2; c++) {
                    acc += g(c, a) * db(a, c);
                }
            }
            return 2 * acc.real();
        };
        grad(3 * k) = contract(d_theta);
        grad(3 * k + 1) = contract(d_t);
        grad(3 * k + 2) = contract(d_r);
        apply_block_right(prefix, b.i, b.j, bs_block(b.theta, b.phi_t, b.phi_r));
    }
    const Eigen::MatrixXcd wp = wt * prefix;
    for (const auto &ph : f.output_phases) {
        grad(3 * static_cast<Eigen::Index>(nb) + ph.i) = 2 * (wp(ph.i, ph.i) * I * std::polar(1.0, ph.phi)).real();
    }
    return grad;
}

std::vector<PreservedHerald> matched_heralds(
    const TransferMatrix &u,
    const Occupancy &input,
    const ModePartition &partition,
    const std::vector<PureState> &targets,
    double threshold) {
    auto outcomes = herald_decompose(simulate_restricted(u, input, partition), partition);
    auto summary = success_probability(outcomes, targets, threshold);
    std::vector<PreservedHerald> out;
    for (const auto &m : summary.matches) {
        out.push_back(PreservedHerald{outcomes[m.outcome].ancilla_pattern, m.target, outcomes[m.outcome].probability});
    }
    return out;
}

std::vector<int> removable_modes(const CompiledCircuit &c, const ModePartition &partition) {
    std::vector<bool> touched(c.m, false);
    for (const auto &b : c.beamsplitters) {
        touched[b.i] = true;
        touched[b.j] = true;
    }
    std::vector<int> out;
    for (int k = partition.signal_modes; k < c.m; k++) {
        if (!touched[k]) {
            out.push_back(k);
        }
    }
    return out;
}

SparsifyResult optimize_stage2(
    const Fabric &f1,
    const SparsifyConfig &config,
    const Occupancy &input,
    const ModePartition &partition,
    const std::vector<PureState> &targets) {
    config.validate();
    f1.validate();
    if (partition.modes() != f1.m) {
        throw std::invalid_argument("Partition mode count differs from the fabric.");
    }
    const TransferMatrix u1 = fabric_matrix(f1);
    SimOptions opts;
    opts.memory_cap_bytes = config.memory_cap_bytes;
    const PureState reference = amplitudes_from_tensor(simulate_restricted(u1, input, partition, opts));
    const auto preserve = matched_heralds(u1, input, partition, targets, config.fidelity_threshold);
    const FidelityObjective objective(reference, partition, input, config.memory_cap_bytes, config.fidelity_mode);
    const int count_before = count_nontrivial(f1, config.tau);
    const Eigen::VectorXd start = fabric_parameters(f1);
    const Eigen::Index nbs = 3 * static_cast<Eigen::Index>(f1.beamsplitter_count());

    std::vector<StageTwoRun> runs(config.restarts);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (int r = next++; r < config.restarts; r = next++) {
            try {
                StageTwoRun run;
                run.index = r;
                std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
                std::uniform_real_distribution<double> jitter(-config.epsilon, config.epsilon);
                Eigen::VectorXd x = start;
                for (Eigen::Index k = 0; k < x.size(); k++) {
                    x(k) += jitter(rng);
                }
                Adam adam(x.size());
                Eigen::MatrixXcd w;
                for (int it = 0; it < config.max_iters; it++) {
                    Fabric f = fabric_from_parameters(f1, x);
                    double angle = objective.value_and_grad_u(fabric_matrix(f).matrix(), w);
                    double lambda = cosine_anneal(it, config.max_iters, config.lambda_reg, 0.0);
                    run.trace.push_back(angle + lambda * regularization_penalty(f));
                    Eigen::VectorXd g = fabric_pullback(f, w);
                    for (Eigen::Index k = 0; k < nbs; k += 3) {
                        double s2 = std::sin(2 * x(k));
                        if (s2 != 0) {
                            g(k) += lambda * 2 * std::cos(2 * x(k)) * (s2 > 0 ? 1.0 : -1.0);
                        }
                    }
                    adam.step(x, g, cosine_anneal(it, config.max_iters, config.lr, config.lr / 100));
                }
                run.fabric = round_special(fabric_from_parameters(f1, x), config.tau);
                run.fidelity_loss = objective.value(fabric_matrix(run.fabric).matrix());
                run.count = count_nontrivial(run.fabric, config.tau);
                run.deltas = herald_deltas(run.fabric, input, partition, targets, preserve, config.memory_cap_bytes);
                run.preserves = gate_passes(run.deltas, config);
                runs[r] = std::move(run);
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::make_exception_ptr(
                        std::runtime_error("stage-2 restart " + std::to_string(r) + ": " + e.what()));
                }
            }
        }
    };
    int workers = config.workers > 0 ? config.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, config.restarts);
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SparsifyResult out;
    int best = -1;
    for (int r = 0; r < config.restarts; r++) {
        if (!runs[r].preserves) {
            continue;
        }
        out.preserving_restarts++;
        if (runs[r].count >= count_before) {
            continue;
        }
        if (best < 0 || runs[r].count < runs[best].count ||
            (runs[r].count == runs[best].count && runs[r].fidelity_loss < runs[best].fidelity_loss)) {
            best = r;
        }
    }

    out.count_before = count_before;
    if (best >= 0) {
        out.fabric = runs[best].fabric;
        out.count_after = runs[best].count;
        out.fidelity_loss = runs[best].fidelity_loss;
        out.deltas = runs[best].deltas;
        out.improved = true;
        out.best_restart = best;
        out.loss_trace = runs[best].trace;
    } else {
        out.fabric = f1;
        out.count_after = count_before;
        out.fidelity_loss = objective.value(u1.matrix());
        out.deltas = herald_deltas(f1, input, partition, targets, preserve, config.memory_cap_bytes);
    }
    out.flags = classify_flags(out.fabric, config.tau);
    out.removable_modes = removable_modes(compile_fabric(out.fabric, out.improved ? config.tau : 0.0), partition);
    return out;
}

}  // namespace heraldgen
