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


#include "heraldgen/discover.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "heraldgen/lie.hpp"
#include "heraldgen/optim.hpp"

namespace heraldgen {

namespace {

struct RestartRun {
    RestartSummary summary;
    Eigen::VectorXd xi;
    std::vector<double> trace;
    std::vector<HeraldedOutcome> outcomes;
    SuccessSummary success;
};

RestartRun run_restart(
    const Stage1Objective &objective, const OptimConfig &cfg, int index, std::size_t param_count) {
    RestartRun run;
    run.summary.index = index;
    run.summary.seed = cfg.seed + static_cast<std::uint64_t>(index);
    std::mt19937_64 rng(run.summary.seed);
    std::normal_distribution<double> normal(0.0, cfg.init_sigma);
    Eigen::VectorXd xi(static_cast<Eigen::Index>(param_count));
    for (Eigen::Index k = 0; k < xi.size(); k++) {
        xi(k) = normal(rng);
    }

    Adam adam(xi.size());
    Eigen::VectorXd grad;
    Eigen::VectorXd best_xi = xi;
    double best = INFINITY;
    std::vector<double> best_history;
    // Near the peak step size Adam oscillates and the best loss can stall
    // long before convergence, so plateau stops are armed only once the step
    // size has decayed below the warmup starting value.
    const double arm_lr = cfg.peak_lr / kOneCycleDivFactor;
    const int warmup_end = static_cast<int>(std::lround(cfg.warmup_fraction * cfg.max_iters));
    int iter = 0;
    for (; iter < cfg.max_iters; iter++) {
        double loss = objective.value_and_gradient(xi, &grad);
        run.trace.push_back(loss);
        if (iter == 0) {
            run.summary.initial_loss = loss;
        }
        if (loss < best) {
            best = loss;
            best_xi = xi;
        }
        best_history.push_back(best);
        double lr = one_cycle_lr(iter, cfg.max_iters, cfg.peak_lr, cfg.warmup_fraction);
        bool armed = iter >= warmup_end && lr <= arm_lr;
        if (armed && plateaued(best_history, cfg.patience, cfg.plateau_tol)) {
            iter++;
            break;
        }
        adam.step(xi, grad, lr);
    }
    run.summary.iterations = iter;
    run.summary.best_loss = best;
    run.xi = best_xi;
    return run;
}

}  // namespace

void OptimConfig::validate() const {
    if (max_iters < 1) {
        throw std::invalid_argument("max_iters must be at least 1.");
    }
    if (restarts < 1) {
        throw std::invalid_argument("restarts must be at least 1.");
    }
    if (!(peak_lr > 0) || !(warmup_fraction >= 0 && warmup_fraction < 1)) {
        throw std::invalid_argument("Learning-rate schedule needs peak_lr > 0 and warmup in [0, 1).");
    }
    if (!(init_sigma > 0)) {
        throw std::invalid_argument("init_sigma must be positive.");
    }
    if (!(fidelity_threshold > 0 && fidelity_threshold <= 1)) {
        throw std::invalid_argument("fidelity_threshold must lie in (0, 1].");
    }
    if (workers < 0) {
        throw std::invalid_argument("workers must be non-negative.");
    }
}

void evaluate_discovery(
    const TransferMatrix &u,
    const LossConfig &loss,
    const Occupancy &input,
    double fidelity_threshold,
    std::size_t memory_cap_bytes,
    std::vector<HeraldedOutcome> &outcomes,
    SuccessSummary &success) {
    SimOptions opts;
    opts.memory_cap_bytes = memory_cap_bytes;
    StateTensor t = simulate_restricted(u, input, loss.partition, opts);
    outcomes = herald_decompose(t, loss.partition);
    success = success_probability(outcomes, loss.targets.states, fidelity_threshold);
}

DiscoveryResult optimize_stage1(const OptimConfig &config, const LossConfig &loss, const Occupancy &input) {
    config.validate();
    const Stage1Objective objective(loss, input, config.memory_cap_bytes);
    const int m = objective.modes();
    if (m < 2) {
        throw std::invalid_argument("Discovery needs at least two modes.");
    }
    const std::size_t params = static_cast<std::size_t>(m) * m - 1;

    std::vector<RestartRun> runs(config.restarts);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (int r = next++; r < config.restarts; r = next++) {
            try {
                RestartRun run = run_restart(objective, config, r, params);
                TransferMatrix u(LieExponential(run.xi).unitary(), 1e-9);
                evaluate_discovery(
                    u, loss, input, config.fidelity_threshold, config.memory_cap_bytes, run.outcomes, run.success);
                run.summary.success_probability = run.success.probability;
                run.summary.matched = run.success.matched;
                runs[r] = std::move(run);
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::make_exception_ptr(
                        std::runtime_error("restart " + std::to_string(r) + ": " + e.what()));
                }
            }
        }
    };
    int workers = config.workers > 0 ? config.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, config.restarts);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; w++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    int best = 0;
    for (int r = 1; r < config.restarts; r++) {
        if (runs[r].summary.success_probability > runs[best].summary.success_probability) {
            best = r;
        }
    }
    DiscoveryResult out;
    out.best_restart = best;
    out.seed = config.seed;
    out.xi = runs[best].xi;
    out.u = TransferMatrix(LieExponential(out.xi).unitary(), 1e-9);
    out.outcomes = runs[best].outcomes;
    out.success = runs[best].success;
    out.loss_trace = runs[best].trace;
    for (const auto &run : runs) {
        out.restarts.push_back(run.summary);
    }
    return out;
}

Eigen::MatrixXcd bell_reference_matrix() {
    auto w = [](int k) { return std::polar(1.0, k * std::numbers::pi / 12); };
    const double r2 = std::numbers::sqrt2;
    Eigen::MatrixXcd u(5, 5);
    u << r2, r2 * w(6), r2, 0, 0,
        w(18), w(16), w(2), w(6), r2,
        r2 * w(18), r2 * w(8), r2 * w(10), 0, 0,
        0, 0, 0, 2, r2 * w(6),
        w(6), w(4), w(14), w(6), r2;
    return u / std::sqrt(6.0);
}

std::vector<Complex> bell_qubit_state() {
    const double h = 1 / std::numbers::sqrt2;
    return {h, 0, 0, -h};
}

}  // namespace heraldgen
