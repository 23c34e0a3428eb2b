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


#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "heraldgen/fusion.hpp"
#include "heraldgen/graph.hpp"
#include "heraldgen/stabilizer.hpp"

namespace heraldgen::cli {

namespace {

namespace fs = std::filesystem;

void check_keys(const Json &cfg, std::initializer_list<const char *> allowed, const std::string &cmd) {
    if (!cfg.is_object()) {
        throw ConfigError(cmd + ": config must be a JSON object.");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &item : cfg.items()) {
        if (!ok.count(item.key())) {
            throw ConfigError(cmd + ": unknown config key '" + item.key() + "'.");
        }
    }
}

template <typename T>
T get_or(const Json &cfg, const char *key, T fallback) {
    if (!cfg.contains(key)) {
        return fallback;
    }
    try {
        return cfg.at(key).get<T>();
    } catch (const Json::exception &) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type.");
    }
}

template <typename T>
T require(const Json &cfg, const char *key, const std::string &cmd) {
    if (!cfg.contains(key)) {
        throw ConfigError(cmd + ": missing config key '" + key + "'.");
    }
    return get_or<T>(cfg, key, T{});
}

fs::path resolve(const std::string &p, const RunOptions &o) {
    fs::path path(p);
    return path.is_absolute() ? path : o.config_dir / path;
}

std::size_t mem_cap(const RunOptions &o) {
    return o.memory_cap_bytes.value_or(std::size_t{8} << 30);
}

LabeledGraph named_graph(const std::string &family, int n) {
    if (family == "path") {
        return LabeledGraph::path(n);
    }
    if (family == "cycle") {
        return LabeledGraph::cycle(n);
    }
    if (family == "star") {
        return LabeledGraph::star(n);
    }
    if (family == "complete") {
        return LabeledGraph::complete(n);
    }
    if (family == "empty") {
        return LabeledGraph::empty(n);
    }
    throw ConfigError("unknown graph family '" + family + "' (path, cycle, star, complete, empty).");
}

std::vector<Edge> edges_from_json(const Json &j) {
    std::vector<Edge> edges;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2) {
            throw ConfigError("graph edges must be [u, v] pairs.");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return edges;
}

int implied_vertices(const std::vector<Edge> &edges) {
    int n = 0;
    for (const auto &[u, v] : edges) {
        n = std::max({n, u + 1, v + 1});
    }
    return n;
}

/// [[u, v], ...], {"edges": [...], "vertices": n}, {"family": f, "vertices": n}
/// or {"file": path}.
LabeledGraph graph_from_json(const Json &j, const RunOptions &o) {
    if (j.is_array()) {
        auto edges = edges_from_json(j);
        return LabeledGraph(implied_vertices(edges), edges);
    }
    if (!j.is_object()) {
        throw ConfigError("graph must be an edge array or an object.");
    }
    std::optional<int> n;
    if (j.contains("vertices")) {
        n = j.at("vertices").get<int>();
    }
    if (j.contains("family")) {
        if (!n) {
            throw ConfigError("graph family needs 'vertices'.");
        }
        return named_graph(j.at("family").get<std::string>(), *n);
    }
    if (j.contains("file")) {
        std::ifstream in(resolve(j.at("file").get<std::string>(), o));
        if (!in) {
            throw ConfigError("cannot open graph file " + j.at("file").get<std::string>());
        }
        return parse_edge_list(in, n);
    }
    if (j.contains("edges")) {
        auto edges = edges_from_json(j.at("edges"));
        return LabeledGraph(n.value_or(implied_vertices(edges)), edges);
    }
    throw ConfigError("graph object needs 'edges', 'family' or 'file'.");
}

std::vector<Complex> target_qubit_state(const Json &cfg, const RunOptions &o, int &qubits) {
    if (cfg.contains("target") && cfg.contains("graph")) {
        throw ConfigError("give either 'target' or 'graph', not both.");
    }
    if (cfg.contains("target")) {
        auto t = cfg.at("target").get<std::string>();
        if (t != "bell") {
            throw ConfigError("unknown target '" + t + "' (only \"bell\"; use 'graph' for graph states).");
        }
        qubits = 2;
        return bell_qubit_state();
    }
    if (cfg.contains("graph")) {
        auto g = graph_from_json(cfg.at("graph"), o);
        qubits = g.vertices();
        return graph_state(g);
    }
    throw ConfigError("missing 'target' or 'graph'.");
}

TargetSet targets_for(const Json &cfg, const RunOptions &o, int &qubits) {
    auto psi = target_qubit_state(cfg, o, qubits);
    auto eq = parse_equivalence(get_or<std::string>(cfg, "equivalence", "pauli"));
    switch (eq) {
        case Equivalence::Single:
            return single_target(psi);
        case Equivalence::PauliOrbit:
            return pauli_orbit(psi);
        case Equivalence::CliffordOrbit:
            if (qubits > 3) {
                throw ConfigError("clifford target sets are limited to 3 qubits.");
            }
            return clifford1_orbit(psi);
    }
    return single_target(psi);
}

Occupancy input_from(const Json &cfg, const char *key, int modes, int photons) {
    if (cfg.contains(key)) {
        auto counts = cfg.at(key).get<std::vector<int>>();
        Occupancy in(counts);
        if (static_cast<int>(in.modes()) != modes || in.total() != photons) {
            throw ConfigError(std::string("'") + key + "' must have " + std::to_string(modes) + " entries summing to " +
                              std::to_string(photons) + ".");
        }
        return in;
    }
    if (photons > modes) {
        throw ConfigError("more photons than modes needs an explicit input occupancy.");
    }
    std::vector<int> c(modes, 0);
    std::fill(c.begin(), c.begin() + photons, 1);
    return Occupancy(c);
}

std::string fmt_g(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Json success_to_json(const SuccessSummary &s) {
    Json matches = Json::array();
    for (const auto &m : s.matches) {
        matches.push_back(Json{{"outcome", m.outcome}, {"target", m.target}, {"fidelity", m.fidelity}});
    }
    return Json{{"probability", s.probability}, {"matched", s.matched}, {"matches", matches}};
}

struct LoadedMatrix {
    Eigen::MatrixXcd u;
    std::optional<Occupancy> input;
};

LoadedMatrix load_matrix_source(const Json &cfg, const RunOptions &o) {
    int sources = cfg.contains("matrix") + cfg.contains("matrix_file") + cfg.contains("fabric_file") +
                  cfg.contains("circuit_file");
    if (sources != 1) {
        throw ConfigError("simulate: give exactly one of matrix, matrix_file, fabric_file, circuit_file.");
    }
    if (cfg.contains("matrix")) {
        const Json &m = cfg.at("matrix");
        if (m.is_string()) {
            if (m.get<std::string>() != "bell_reference") {
                throw ConfigError("simulate: the only named matrix is \"bell_reference\".");
            }
            return {bell_reference_matrix(), Occupancy{1, 1, 1, 1, 0}};
        }
        return {matrix_from_json(m), std::nullopt};
    }
    if (cfg.contains("matrix_file")) {
        Json j = read_json_file(resolve(cfg.at("matrix_file").get<std::string>(), o));
        if (j.is_object() && j.value("kind", "") == "discovery") {
            auto a = discovery_from_json(j);
            return {a.u, a.input};
        }
        if (j.is_object()) {
            return {matrix_from_json(j.at("matrix")), std::nullopt};
        }
        return {matrix_from_json(j), std::nullopt};
    }
    if (cfg.contains("fabric_file")) {
        Json j = read_json_file(resolve(cfg.at("fabric_file").get<std::string>(), o));
        if (j.value("kind", "") == "sparsify") {
            auto a = sparsify_from_json(j);
            return {fabric_matrix(a.result.fabric).matrix(), a.input};
        }
        return {fabric_matrix(fabric_from_json(j)).matrix(), std::nullopt};
    }
    auto c = circuit_from_json(read_json_file(resolve(cfg.at("circuit_file").get<std::string>(), o)));
    return {circuit_matrix(c.circuit).matrix(), c.input};
}

}  // namespace

TargetSet targets_from_config(const Json &config) {
    int q = 0;
    return targets_for(config, RunOptions{}, q);
}

Json cmd_simulate(const Json &cfg, const RunOptions &o) {
    const std::string cmd = "simulate";
    check_keys(cfg,
               {"matrix", "matrix_file", "fabric_file", "circuit_file", "input", "partition", "signal_modes", "target",
                "graph", "equivalence", "fidelity_threshold", "cutoff", "noise_floor"},
               cmd);
    auto src = load_matrix_source(cfg, o);
    TransferMatrix u(src.u, 1e-8);
    const int m = u.modes();
    Occupancy input;
    if (cfg.contains("input")) {
        input = Occupancy(cfg.at("input").get<std::vector<int>>());
    } else if (src.input) {
        input = *src.input;
    } else {
        throw ConfigError("simulate: missing 'input'.");
    }
    if (static_cast<int>(input.modes()) != m) {
        throw ConfigError("simulate: input has " + std::to_string(input.modes()) + " modes, matrix has " +
                          std::to_string(m) + ".");
    }
    SimOptions opts;
    opts.memory_cap_bytes = mem_cap(o);
    opts.noise_floor = get_or<double>(cfg, "noise_floor", opts.noise_floor);
    if (cfg.contains("cutoff")) {
        opts.cutoff = cfg.at("cutoff").get<int>();
    }
    std::vector<HeraldedOutcome> heralds;
    Json report{{"kind", "simulate"}, {"config_hash", config_hash(cfg)}, {"modes", m}, {"input", occupancy_to_json(input)}};
    if (cfg.contains("partition")) {
        auto part = partition_from_json(cfg.at("partition"));
        if (part.modes() != m || part.photons() != input.total()) {
            throw ConfigError("simulate: partition does not match the matrix size or photon number.");
        }
        auto tensor = simulate_restricted(u, input, part, opts);
        heralds = herald_decompose(tensor, part);
        report["partition"] = partition_to_json(part);
    } else {
        int s = get_or<int>(cfg, "signal_modes", m);
        if (s < 0 || s > m) {
            throw ConfigError("simulate: signal_modes must lie in [0, m].");
        }
        heralds = herald_all_splits(simulate_full(u, input, opts), s);
        report["signal_modes"] = s;
    }
    double total = 0;
    Json hj = Json::array();
    for (const auto &h : heralds) {
        total += h.probability;
        hj.push_back(outcome_to_json(h));
    }
    report["heralds"] = hj;
    report["total_probability"] = total;
    std::vector<PureState> targets;
    if (cfg.contains("target") || cfg.contains("graph")) {
        int q = 0;
        targets = targets_for(cfg, o, q).states;
        double thr = get_or<double>(cfg, "fidelity_threshold", kDefaultFidelityThreshold);
        report["success"] = success_to_json(success_probability(heralds, targets, thr));
    }
    write_text_file(o.out / "simulate.json", dump_json(report));
    write_text_file(o.out / "simulate.csv", outcomes_csv(heralds, targets));
    return report;
}

Json cmd_discover(const Json &cfg_in, const RunOptions &o) {
    const std::string cmd = "discover";
    check_keys(cfg_in,
               {"target", "graph", "equivalence", "modes", "photons", "input_occupancy", "restarts", "seed", "max_iters",
                "c", "p", "fidelity_threshold", "peak_lr", "warmup_fraction", "patience", "plateau_tol", "init_sigma"},
               cmd);
    Json cfg = cfg_in;
    if (o.seed) {
        cfg["seed"] = *o.seed;
    }
    int q = 0;
    LossConfig lc;
    lc.targets = targets_for(cfg, o, q);
    bool bell = cfg.contains("target");
    int modes = bell ? get_or<int>(cfg, "modes", 5) : require<int>(cfg, "modes", cmd);
    int photons = bell ? get_or<int>(cfg, "photons", 4) : require<int>(cfg, "photons", cmd);
    if (modes < 2 * q || photons < q) {
        throw ConfigError("discover: need at least " + std::to_string(2 * q) + " modes and " + std::to_string(q) +
                          " photons for the signal.");
    }
    lc.partition = ModePartition::make(2 * q, modes - 2 * q, q, photons - q);
    lc.c = get_or<double>(cfg, "c", lc.c);
    lc.p = get_or<int>(cfg, "p", lc.p);
    lc.validate();
    Occupancy input = input_from(cfg, "input_occupancy", modes, photons);

    OptimConfig oc;
    oc.restarts = get_or<int>(cfg, "restarts", oc.restarts);
    oc.seed = get_or<std::uint64_t>(cfg, "seed", oc.seed);
    oc.max_iters = get_or<int>(cfg, "max_iters", oc.max_iters);
    oc.fidelity_threshold = get_or<double>(cfg, "fidelity_threshold", oc.fidelity_threshold);
    oc.peak_lr = get_or<double>(cfg, "peak_lr", oc.peak_lr);
    oc.warmup_fraction = get_or<double>(cfg, "warmup_fraction", oc.warmup_fraction);
    oc.patience = get_or<int>(cfg, "patience", oc.patience);
    oc.plateau_tol = get_or<double>(cfg, "plateau_tol", oc.plateau_tol);
    oc.init_sigma = get_or<double>(cfg, "init_sigma", oc.init_sigma);
    oc.workers = o.workers.value_or(0);
    oc.memory_cap_bytes = mem_cap(o);
    oc.validate();
    cfg["seed"] = oc.seed;

    auto res = optimize_stage1(oc, lc, input);
    DiscoveryArtifact a;
    a.config_hash = config_hash(cfg);
    a.seed = oc.seed;
    a.config = cfg;
    a.input = input;
    a.partition = lc.partition;
    a.u = res.u.matrix();
    a.heralds = res.outcomes;
    a.success_probability = res.success.probability;
    a.matched = res.success.matched;
    a.best_restart = res.best_restart;
    a.restarts = res.restarts;
    a.loss_trace = res.loss_trace;
    Json j = discovery_to_json(a);
    write_text_file(o.out / "discovery.json", dump_json(j));
    return j;
}

Json cmd_sparsify(const Json &cfg_in, const RunOptions &o) {
    const std::string cmd = "sparsify";
    check_keys(cfg_in,
               {"discovery", "lambda_reg", "epsilon", "tau", "max_iters", "seed", "restarts", "lr", "fidelity_threshold",
                "preserve_tol", "fidelity_mode"},
               cmd);
    Json cfg = cfg_in;
    if (o.seed) {
        cfg["seed"] = *o.seed;
    }
    auto disc = discovery_from_json(read_json_file(resolve(require<std::string>(cfg, "discovery", cmd), o)));
    SparsifyConfig sc;
    sc.lambda_reg = get_or<double>(cfg, "lambda_reg", sc.lambda_reg);
    sc.epsilon = get_or<double>(cfg, "epsilon", sc.epsilon);
    sc.tau = get_or<double>(cfg, "tau", sc.tau);
    sc.max_iters = get_or<int>(cfg, "max_iters", sc.max_iters);
    sc.seed = get_or<std::uint64_t>(cfg, "seed", sc.seed);
    sc.restarts = get_or<int>(cfg, "restarts", sc.restarts);
    sc.lr = get_or<double>(cfg, "lr", sc.lr);
    sc.fidelity_threshold =
        get_or<double>(cfg, "fidelity_threshold", get_or<double>(disc.config, "fidelity_threshold", sc.fidelity_threshold));
    sc.preserve_tol = get_or<double>(cfg, "preserve_tol", sc.preserve_tol);
    sc.fidelity_mode = parse_fidelity_mode(get_or<std::string>(cfg, "fidelity_mode", fidelity_mode_name(sc.fidelity_mode)));
    sc.workers = o.workers.value_or(0);
    sc.memory_cap_bytes = mem_cap(o);
    sc.validate();
    cfg["seed"] = sc.seed;
    // The hash also pins the discovery artifact it started from.
    cfg["discovery_hash"] = disc.config_hash;

    auto targets = targets_from_config(disc.config).states;
    Fabric f1 = clements_decompose(TransferMatrix(disc.u, 1e-8));
    SparsifyArtifact a;
    a.result = optimize_stage2(f1, sc, disc.input, disc.partition, targets);
    a.config_hash = config_hash(cfg);
    a.seed = sc.seed;
    a.config = cfg;
    a.input = disc.input;
    a.partition = disc.partition;
    Json j = sparsify_to_json(a);
    write_text_file(o.out / "sparsify.json", dump_json(j));
    write_text_file(o.out / "fabric.json", dump_json(fabric_to_json(a.result.fabric)));
    return j;
}

std::string instruction_table(const CircuitFile &c) {
    std::string out = "step  kind          modes     theta                  phi_t                  phi_r / phi\n";
    char buf[200];
    int k = 0;
    for (const auto &ins : circuit_instructions(c.circuit)) {
        if (const auto *p = std::get_if<PhaseshifterParams>(&ins)) {
            std::snprintf(buf, sizeof buf, "%-5d phase         %-9d %-22s %-22s %.17g\n", k, p->i, "", "", p->phi);
        } else if (const auto *s = std::get_if<SwapInstruction>(&ins)) {
            std::snprintf(buf, sizeof buf, "%-5d swap          %d,%d\n", k, s->i, s->j);
        } else {
            const auto &b = std::get<BeamsplitterParams>(ins);
            char modes[24];
            std::snprintf(modes, sizeof modes, "%d,%d", b.i, b.j);
            std::snprintf(buf, sizeof buf, "%-5d beamsplitter  %-9s %-22.17g %-22.17g %.17g\n", k, modes, b.theta,
                          b.phi_t, b.phi_r);
        }
        out += buf;
        k++;
    }
    return out;
}

Json cmd_compile(const Json &cfg, const RunOptions &o) {
    const std::string cmd = "compile";
    check_keys(cfg, {"fabric", "input", "tau", "absorb"}, cmd);
    Json src = read_json_file(resolve(require<std::string>(cfg, "fabric", cmd), o));
    Fabric f;
    std::optional<Occupancy> input;
    Json hashed = cfg;
    Json seed = nullptr;
    if (src.value("kind", "") == "sparsify") {
        auto a = sparsify_from_json(src);
        f = a.result.fabric;
        input = a.input;
        hashed["sparsify_hash"] = a.config_hash;
        seed = a.seed;
    } else {
        f = fabric_from_json(src);
    }
    if (cfg.contains("input")) {
        input = Occupancy(cfg.at("input").get<std::vector<int>>());
    }
    double tau = get_or<double>(cfg, "tau", kClassifyTolerance);
    bool absorb = get_or<bool>(cfg, "absorb", true);
    if (input && static_cast<int>(input->modes()) != f.m) {
        throw ConfigError("compile: input has the wrong number of modes.");
    }
    CompiledCircuit compiled = compile_fabric(f, tau);
    double dev = deviation_up_to_phase(circuit_matrix(compiled).matrix(), fabric_matrix(f).matrix());
    if (dev > 1e-8) {
        throw std::runtime_error("compile: compiled circuit deviates from the fabric by " + fmt_g(dev));
    }
    CircuitFile out;
    if (absorb) {
        if (!input) {
            throw ConfigError("compile: absorbing the phase and permutation layers needs 'input'.");
        }
        auto ab = absorb_into_input(compiled, *input);
        out = CircuitFile{ab.circuit, ab.input};
    } else {
        out = CircuitFile{compiled, input.value_or(Occupancy(std::vector<int>(f.m, 0)))};
    }
    Json j = circuit_to_json(out);
    j["config_hash"] = config_hash(hashed);
    j["seed"] = seed;
    write_text_file(o.out / "circuit.json", dump_json(j));
    write_text_file(o.out / "circuit.txt", instruction_table(out));
    return j;
}

Json cmd_baseline(const Json &cfg, const RunOptions &o) {
    const std::string cmd = "baseline";
    check_keys(cfg, {"graphs", "p_bell", "p_fusion"}, cmd);
    FusionParams fp;
    fp.p_bell = get_or<double>(cfg, "p_bell", fp.p_bell);
    fp.p_fusion = get_or<double>(cfg, "p_fusion", fp.p_fusion);
    fp.validate();
    std::vector<BaselineEntry> entries;
    for (const auto &g : require<Json>(cfg, "graphs", cmd)) {
        if (!g.is_object()) {
            throw ConfigError("baseline: each graph entry must be an object.");
        }
        check_keys(g, {"id", "edges", "vertices", "family", "file", "discovered"}, cmd + " graph entry");
        Json desc = g;
        desc.erase("id");
        desc.erase("discovered");
        BaselineEntry e;
        e.row = baseline_row(graph_from_json(desc, o), fp);
        e.id = get_or<std::string>(g, "id", "");
        e.discovered = get_or<double>(g, "discovered", -1.0);
        entries.push_back(std::move(e));
    }
    std::string csv = baseline_csv(entries);
    write_text_file(o.out / "baseline.csv", csv);
    return Json{{"csv", csv}};
}

Json cmd_bench(const Json &cfg_in, const RunOptions &o) {
    const std::string cmd = "bench";
    check_keys(cfg_in, {"points", "repetitions", "seed"}, cmd);
    Json cfg = cfg_in;
    if (o.seed) {
        cfg["seed"] = *o.seed;
    }
    int reps = get_or<int>(cfg, "repetitions", 10);
    if (reps < 10) {
        throw ConfigError("bench: repetitions must be at least 10.");
    }
    std::mt19937_64 rng(get_or<std::uint64_t>(cfg, "seed", 0));
    std::string csv = "modes,photons,signal_modes,signal_photons,samples,mean_seconds,std_seconds,status,reason\n";
    Json rows = Json::array();
    for (const auto &p : require<Json>(cfg, "points", cmd)) {
        if (!p.is_array() || p.size() != 2) {
            throw ConfigError("bench: points are [modes, photons] pairs.");
        }
        int m = p[0].get<int>(), n = p[1].get<int>();
        if (m < 2 || n < 0) {
            throw ConfigError("bench: points need modes >= 2 and photons >= 0.");
        }
        int ms = m / 2, ns = n / 2;
        std::vector<int> c(m, 0);
        for (int k = 0; k < n; k++) {
            c[k % m]++;
        }
        Occupancy input(c);
        auto part = ModePartition::make(ms, m - ms, ns, n - ns);
        auto u = haar_unitary(m, rng);
        SimOptions opts;
        opts.memory_cap_bytes = mem_cap(o);
        std::vector<double> times;
        std::string status = "ok", reason;
        try {
            for (int r = 0; r < reps; r++) {
                auto t0 = std::chrono::steady_clock::now();
                auto t = simulate_restricted(u, input, part, opts);
                times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            }
        } catch (const MemoryBudgetError &e) {
            status = "skipped";
            reason = e.what();
            times.clear();
        }
        double mean = 0, sd = 0;
        for (double t : times) {
            mean += t;
        }
        if (!times.empty()) {
            mean /= static_cast<double>(times.size());
            for (double t : times) {
                sd += (t - mean) * (t - mean);
            }
            sd = times.size() > 1 ? std::sqrt(sd / static_cast<double>(times.size() - 1)) : 0.0;
        }
        std::string quoted = reason;
        std::replace(quoted.begin(), quoted.end(), ',', ';');
        csv += std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(ms) + "," + std::to_string(ns) + "," +
               std::to_string(times.size()) + "," + (times.empty() ? "" : csv_number(mean)) + "," +
               (times.empty() ? "" : csv_number(sd)) + "," + status + "," + quoted + "\n";
        rows.push_back(Json{{"modes", m}, {"photons", n}, {"samples", times.size()}, {"mean_seconds", mean},
                            {"std_seconds", sd}, {"status", status}, {"reason", reason}});
    }
    write_text_file(o.out / "bench.csv", csv);
    return Json{{"kind", "bench"}, {"rows", rows}, {"csv", csv}};
}

Json cmd_orbits(const Json &cfg, const RunOptions &o) {
    const std::string cmd = "orbits";
    check_keys(cfg, {"qubits", "graphs", "clifford_max", "partition"}, cmd);
    int n = get_or<int>(cfg, "qubits", 3);
    if (n < 1 || n > 5) {
        throw ConfigError("orbits: qubits must lie in 1..5.");
    }
    int cliff_max = get_or<int>(cfg, "clifford_max", 4);
    if (cliff_max > 5) {
        throw ConfigError("orbits: clifford_max is at most 5.");
    }
    Json report{{"kind", "orbits"}, {"qubits", n}};
    Json counts = Json::object();
    for (int k = 1; k <= 5; k++) {
        counts[std::to_string(k)] = to_string(stabilizer_count(k));
    }
    report["stabilizer_counts"] = counts;
    if (get_or<bool>(cfg, "partition", n <= 3)) {
        if (n > 4) {
            throw ConfigError("orbits: the partition check enumerates states and is limited to 4 qubits.");
        }
        auto rep = verify_orbit_partition(n);
        Json classes = Json::array();
        for (const auto &c : rep.classes) {
            classes.push_back(Json{{"size", c.size}, {"subgroup_order", c.subgroup_order}});
        }
        report["partition"] = Json{{"qubits", rep.qubits},
                                   {"total_states", rep.total_states},
                                   {"classes", classes},
                                   {"consistent", rep.consistent}};
    }
    std::vector<std::pair<std::string, LabeledGraph>> graphs;
    if (cfg.contains("graphs")) {
        for (const auto &g : cfg.at("graphs")) {
            Json desc = g;
            std::string id;
            if (desc.is_object() && desc.contains("id")) {
                id = desc.at("id").get<std::string>();
                desc.erase("id");
            }
            auto lg = graph_from_json(desc, o);
            graphs.emplace_back(id.empty() ? lg.str() : id, lg);
        }
    } else {
        graphs = {{"path" + std::to_string(n), LabeledGraph::path(n)},
                  {"star" + std::to_string(n), LabeledGraph::star(n)},
                  {"complete" + std::to_string(n), LabeledGraph::complete(n)}};
    }
    Json gj = Json::array();
    for (const auto &[id, g] : graphs) {
        auto psi = graph_state(g);
        Json entry{{"id", id}, {"edges", g.str()}, {"vertices", g.vertices()}};
        entry["pauli_orbit"] = g.vertices() <= 8 ? Json(pauli_orbit(psi).states.size()) : Json(nullptr);
        entry["clifford_orbit"] =
            g.vertices() <= cliff_max ? Json(clifford1_orbit_size(psi, g.vertices() == 5)) : Json(nullptr);
        auto lc = lc_orbit(g);
        Json members = Json::array();
        for (const auto &h : lc.graphs) {
            members.push_back(h.str());
        }
        entry["lc_orbit"] = Json{{"size", lc.graphs.size()},
                                 {"min_edges", lc.min_edges},
                                 {"representative", lc.representative.str()},
                                 {"members", members}};
        gj.push_back(std::move(entry));
    }
    report["graphs"] = gj;
    write_text_file(o.out / "orbits.json", dump_json(report));
    return report;
}

}  // namespace heraldgen::cli
