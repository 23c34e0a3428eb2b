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


#include "verify_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "heraldgen/compile.hpp"
#include "heraldgen/discover.hpp"
#include "heraldgen/fusion.hpp"
#include "heraldgen/graph.hpp"
#include "heraldgen/lie.hpp"
#include "heraldgen/loss.hpp"
#include "heraldgen/optics.hpp"
#include "heraldgen/permanent.hpp"
#include "heraldgen/simulate.hpp"
#include "heraldgen/sparsify.hpp"
#include "heraldgen/stabilizer.hpp"

namespace heraldgen {

namespace {

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Occupancy random_input(int m, int n, std::mt19937_64 &rng) {
    std::vector<int> c(m, 0);
    std::uniform_int_distribution<int> mode(0, m - 1);
    for (int k = 0; k < n; k++) {
        c[mode(rng)]++;
    }
    return Occupancy(c);
}

const HeraldedOutcome *find_pattern(const std::vector<HeraldedOutcome> &outs, const Occupancy &p) {
    for (const auto &o : outs) {
        if (o.ancilla_pattern == p) {
            return &o;
        }
    }
    return nullptr;
}

CriterionResult bell_herald() {
    CriterionResult r{1, "Bell herald reproduction", false, "", 0};
    TransferMatrix u(bell_reference_matrix(), 1e-9);
    auto full = simulate_full(u, Occupancy{1, 1, 1, 1, 0});
    auto outs = herald_decompose(full, ModePartition::make(4, 1, 2, 2));
    const auto *o = find_pattern(outs, Occupancy{2});
    if (o == nullptr) {
        r.detail = "no outcome for pattern (2)";
        return r;
    }
    PureState target = dual_rail_encode(bell_qubit_state());
    double f = fidelity(target, o->conditional_state);
    r.passed = std::abs(o->probability - 1.0 / 9.0) <= 1e-9 && f >= 1 - 1e-9;
    r.detail = "P(2)=" + fmt("%.12f", o->probability) + " fidelity=" + fmt("%.12f", f);
    return r;
}

CriterionResult oracle_equivalence(std::mt19937_64 &rng) {
    CriterionResult r{2, "Oracle equivalence", false, "", 0};
    double worst = 0;
    std::size_t checked = 0;
    std::uniform_int_distribution<int> md(1, 6), nd(1, 4);
    for (int t = 0; t < 200; t++) {
        int m = md(rng), n = nd(rng);
        auto u = haar_unitary(m, rng);
        auto in = random_input(m, n, rng);
        auto full = simulate_full(u, in);
        for (const auto &o : enumerate_occupancies(m, n)) {
            Complex a = full.at(o) * fock_normalization(o);
            worst = std::max(worst, std::abs(a - amplitude_oracle(u, in, o)));
            checked++;
        }
    }
    r.passed = worst <= 1e-10;
    r.detail = std::to_string(checked) + " amplitudes, max |diff|=" + fmt("%.3e", worst);
    return r;
}

CriterionResult restricted_exactness(std::mt19937_64 &rng) {
    CriterionResult r{3, "Restricted-simulation exactness", false, "", 0};
    double worst = 0;
    std::size_t checked = 0;
    std::uniform_int_distribution<int> half(1, 4), nh(1, 2);
    for (int t = 0; t < 20; t++) {
        int ms = half(rng), nsh = nh(rng);
        int m = 2 * ms, n = 2 * nsh;
        auto u = haar_unitary(m, rng);
        auto in = random_input(m, n, rng);
        auto part = ModePartition::make(ms, ms, nsh, nsh);
        auto full = simulate_full(u, in);
        auto rest = simulate_restricted(u, in, part);
        for (const auto &s : enumerate_occupancies(ms, nsh)) {
            for (const auto &a : enumerate_occupancies(ms, nsh)) {
                auto o = s.concat(a);
                worst = std::max(worst, std::abs(full.at(o) - rest.at(o)));
                checked++;
            }
        }
    }
    r.passed = worst <= 1e-10;
    r.detail = std::to_string(checked) + " slice entries, max |diff|=" + fmt("%.3e", worst);
    return r;
}

CriterionResult gradient_check(std::mt19937_64 &rng) {
    CriterionResult r{4, "Gradient correctness", false, "", 0};
    double worst = 0;
    std::uniform_int_distribution<int> md(3, 5), nd(2, 4);
    std::normal_distribution<double> g(0.0, 0.7);
    for (int t = 0; t < 30; t++) {
        int m = md(rng), n = nd(rng);
        std::vector<Complex> psi{Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
        LossConfig lc;
        lc.targets = single_target(psi);
        lc.partition = ModePartition::make(2, m - 2, 1, n - 1);
        Occupancy in = random_input(m, n, rng);
        Stage1Objective obj(lc, in);
        Eigen::VectorXd xi(m * m - 1);
        for (Eigen::Index k = 0; k < xi.size(); k++) {
            xi(k) = g(rng);
        }
        Eigen::VectorXd grad;
        obj.value_and_gradient(xi, &grad);
        Eigen::VectorXd fd(xi.size());
        const double h = 1e-5;
        for (Eigen::Index k = 0; k < xi.size(); k++) {
            Eigen::VectorXd a = xi, b = xi;
            a(k) += h;
            b(k) -= h;
            fd(k) = (obj.value_and_gradient(a, nullptr) - obj.value_and_gradient(b, nullptr)) / (2 * h);
        }
        double rel = (grad - fd).norm() / std::max(fd.norm(), 1e-12);
        worst = std::max(worst, rel);
    }
    r.passed = worst <= 1e-4;
    r.detail = "30 points, max relative error=" + fmt("%.3e", worst);
    return r;
}

CriterionResult bell_discovery(const VerifyOptions &opt) {
    CriterionResult r{5, "Stage-1 Bell discovery", false, "", 0};
    OptimConfig oc;
    oc.restarts = 20;
    oc.seed = opt.seed;
    oc.workers = opt.workers;
    LossConfig lc;
    lc.targets = pauli_orbit(bell_qubit_state());
    lc.partition = ModePartition::make(4, 1, 2, 2);
    Occupancy in{1, 1, 1, 1, 0};
    auto res = optimize_stage1(oc, lc, in);
    std::vector<HeraldedOutcome> outs;
    SuccessSummary summary;
    evaluate_discovery(res.u, lc, in, 0.9999, oc.memory_cap_bytes, outs, summary);
    r.passed = summary.probability >= 1.0 / 9.0 - 1e-3;
    r.detail = "best of 20 restarts P=" + fmt("%.6f", summary.probability) + " (restart " +
               std::to_string(res.best_restart) + ")";
    return r;
}

CriterionResult bell_sparsify(const VerifyOptions &opt) {
    CriterionResult r{6, "Sparsification of the Bell solution", false, "", 0};
    TransferMatrix u(bell_reference_matrix(), 1e-9);
    Fabric f1 = clements_decompose(u);
    SparsifyConfig cfg;
    cfg.seed = opt.seed;
    cfg.restarts = 4;
    cfg.workers = opt.workers;
    auto part = ModePartition::make(4, 1, 2, 2);
    Occupancy in{1, 1, 1, 1, 0};
    auto targets = pauli_orbit(bell_qubit_state()).states;
    auto res = optimize_stage2(f1, cfg, in, part, targets);
    // Recompute the herald independently of the optimizer's bookkeeping.
    auto outs = herald_decompose(simulate_full(fabric_matrix(res.fabric), in), part);
    const auto *o = find_pattern(outs, Occupancy{2});
    double p = o == nullptr ? 0.0 : o->probability;
    double f = o == nullptr ? 0.0 : fidelity(dual_rail_encode(bell_qubit_state()), o->conditional_state);
    int count = count_nontrivial(res.fabric, cfg.tau);
    r.passed = count <= 5 && std::abs(p - 1.0 / 9.0) <= 1e-4 && f >= cfg.fidelity_threshold &&
               res.preserving_restarts > 0;
    r.detail = "generic BS " + std::to_string(res.count_before) + " -> " + std::to_string(count) +
               ", P(2)=" + fmt("%.8f", p) + ", preserving restarts " + std::to_string(res.preserving_restarts) + "/" +
               std::to_string(cfg.restarts);
    return r;
}

Fabric random_sparse_fabric(int m, std::mt19937_64 &rng) {
    Fabric f = Fabric::identity(m);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> kind(0, 9);
    for (auto &layer : f.layers) {
        for (auto &b : layer) {
            int k = kind(rng);
            if (k < 4) {
                do {
                    b.theta = ang(rng);
                } while (classify_bs(b.theta, 2 * kClassifyTolerance) != BsClass::Generic);
            } else {
                b.theta = k < 7 ? 0.0 : (k < 9 ? std::numbers::pi / 2 : -std::numbers::pi / 2);
            }
            b.phi_t = ang(rng);
            b.phi_r = ang(rng);
        }
    }
    for (auto &p : f.output_phases) {
        p.phi = ang(rng);
    }
    return f;
}

CriterionResult compile_equivalence(std::mt19937_64 &rng) {
    CriterionResult r{7, "Compilation equivalence", false, "", 0};
    double worst_p = 0, worst_f = 0;
    bool patterns_ok = true;
    std::uniform_int_distribution<int> md(2, 6), nd(1, 4);
    for (int t = 0; t < 20; t++) {
        int m = md(rng), n = nd(rng);
        Fabric f = random_sparse_fabric(m, rng);
        Occupancy in = random_input(m, n, rng);
        auto absorbed = absorb_into_input(compile_fabric(f), in);
        int s = std::max(1, m / 2);
        auto before = herald_all_splits(simulate_full(fabric_matrix(f), in), s);
        auto after = herald_all_splits(simulate_full(circuit_matrix(absorbed.circuit), absorbed.input), s);
        std::map<Occupancy, const HeraldedOutcome *> a_map;
        for (const auto &o : after) {
            a_map[o.ancilla_pattern] = &o;
        }
        if (before.size() != after.size()) {
            patterns_ok = false;
        }
        for (const auto &o : before) {
            auto it = a_map.find(o.ancilla_pattern);
            if (it == a_map.end()) {
                patterns_ok = false;
                continue;
            }
            worst_p = std::max(worst_p, std::abs(o.probability - it->second->probability));
            worst_f = std::max(worst_f, 1 - fidelity(o.conditional_state, it->second->conditional_state));
        }
    }
    double worst_dev = 0;
    std::uniform_int_distribution<int> cm(1, 10);
    for (int t = 0; t < 50; t++) {
        auto u = haar_unitary(cm(rng), rng);
        worst_dev = std::max(worst_dev, (fabric_matrix(clements_decompose(u)).matrix() - u.matrix()).cwiseAbs().maxCoeff());
    }
    r.passed = patterns_ok && worst_p <= 1e-9 && worst_f <= 1e-9 && worst_dev <= 1e-8;
    r.detail = std::string(patterns_ok ? "patterns match" : "PATTERN MISMATCH") + ", max dP=" + fmt("%.2e", worst_p) +
               ", max 1-F=" + fmt("%.2e", worst_f) + ", Clements max dev=" + fmt("%.2e", worst_dev);
    return r;
}

CriterionResult combinatorics() {
    CriterionResult r{8, "Combinatorics", false, "", 0};
    bool ok = true;
    std::ostringstream d;
    const char *counts[] = {"1080", "36720", "2423520"};
    for (int n = 3; n <= 5; n++) {
        auto c = to_string(stabilizer_count(n));
        ok = ok && c == counts[n - 3];
        d << "N(" << n << ")=" << c << " ";
    }
    auto rep = verify_orbit_partition(3);
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto &c : rep.classes) {
        got.emplace_back(c.size, c.subgroup_order);
    }
    std::vector<std::pair<std::size_t, std::size_t>> want{{432, 32}, {216, 64}, {144, 96}, {144, 96}, {144, 96}};
    ok = ok && rep.consistent && got == want;
    d << "partition ";
    for (std::size_t k = 0; k < got.size(); k++) {
        d << (k ? "+" : "") << got[k].first;
    }
    std::vector<LabeledGraph> table{LabeledGraph::path(3), LabeledGraph::complete(3), LabeledGraph::star(4),
                                    LabeledGraph::path(4), LabeledGraph::cycle(4), LabeledGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}),
                                    LabeledGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}), LabeledGraph::complete(4),
                                    LabeledGraph::star(5), LabeledGraph::path(5), LabeledGraph::cycle(5),
                                    LabeledGraph::complete(5)};
    bool pauli_ok = true;
    for (const auto &g : table) {
        auto psi = graph_state(g);
        pauli_ok = pauli_ok && pauli_orbit(psi).states.size() == (std::size_t{1} << g.vertices());
    }
    ok = ok && pauli_ok;
    d << ", Pauli orbits 2^n " << (pauli_ok ? "ok" : "FAIL");
    std::vector<std::pair<LabeledGraph, std::size_t>> cliff{
        {LabeledGraph::path(3), 432}, {LabeledGraph::complete(3), 432}, {LabeledGraph::star(4), 2592},
        {LabeledGraph::complete(4), 2592}, {LabeledGraph::path(4), 5184}, {LabeledGraph::cycle(4), 5184}};
    d << ", Clifford";
    for (const auto &[g, want_size] : cliff) {
        auto sz = clifford1_orbit_size(graph_state(g));
        ok = ok && sz == want_size;
        d << " " << sz;
    }
    r.passed = ok;
    r.detail = d.str();
    return r;
}

CriterionResult fusion_baselines() {
    CriterionResult r{9, "Fusion baselines", false, "", 0};
    double s4 = fusion_success(LabeledGraph::star(4));
    double k4 = lc_optimized_fusion(LabeledGraph::complete(4)).probability;
    double s5 = fusion_success(LabeledGraph::star(5));
    double k5 = lc_optimized_fusion(LabeledGraph::complete(5)).probability;
    auto r4 = format_sig2(improvement_ratio(7.813e-3, k4));
    auto r5 = format_sig2(improvement_ratio(1.157e-3, k5));
    // The published values carry four digits, which is stricter than three.
    r.passed = r4 == "4.7" && r5 == "7.5" && fmt("%.3e", s4) == "1.648e-03" && fmt("%.3e", k4) == "1.648e-03" &&
               fmt("%.3e", s5) == "1.545e-04" && fmt("%.3e", k5) == "1.545e-04";
    r.detail = "star4 " + fmt("%.4e", s4) + ", K4 " + fmt("%.4e", k4) + ", star5 " + fmt("%.4e", s5) + ", K5 " +
               fmt("%.4e", k5) + ", ratios " + r4 + " and " + r5;
    return r;
}

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions &options) {
    std::vector<std::function<CriterionResult(std::mt19937_64 &)>> suite{
        [](std::mt19937_64 &) { return bell_herald(); },
        [](std::mt19937_64 &rng) { return oracle_equivalence(rng); },
        [](std::mt19937_64 &rng) { return restricted_exactness(rng); },
        [](std::mt19937_64 &rng) { return gradient_check(rng); },
        [&](std::mt19937_64 &) { return bell_discovery(options); },
        [&](std::mt19937_64 &) { return bell_sparsify(options); },
        [](std::mt19937_64 &rng) { return compile_equivalence(rng); },
        [](std::mt19937_64 &) { return combinatorics(); },
        [](std::mt19937_64 &) { return fusion_baselines(); },
    };
    // Wall-clock budgets in seconds; 0 means none.
    const double time_limits[] = {1, 120, 120, 0, 0, 0, 0, 300, 1};
    std::vector<CriterionResult> out;
    for (int id = 1; id <= static_cast<int>(suite.size()); id++) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
            continue;
        }
        std::mt19937_64 rng(options.seed + static_cast<unsigned long long>(id));
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = suite[id - 1](rng);
        } catch (const std::exception &e) {
            r = CriterionResult{id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), 0};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double limit = time_limits[id - 1];
        if (limit > 0 && r.seconds > limit) {
            r.passed = false;
            r.detail += ", over the " + fmt("%g", limit) + " s budget";
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult &r) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + ": " + r.detail +
           " (" + t + " s)";
}

}  // namespace heraldgen
