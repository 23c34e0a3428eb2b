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


#include "heraldgen/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heraldgen {

namespace {

Json bs_to_json(const BeamsplitterParams &b) {
    return Json{{"i", b.i}, {"j", b.j}, {"theta", b.theta}, {"phi_t", b.phi_t}, {"phi_r", b.phi_r}};
}

BeamsplitterParams bs_from_json(const Json &j) {
    return BeamsplitterParams{j.at("i").get<int>(), j.at("j").get<int>(), j.at("theta").get<double>(),
                              j.at("phi_t").get<double>(), j.at("phi_r").get<double>()};
}

Json restart_to_json(const RestartSummary &r) {
    return Json{{"index", r.index},
                {"seed", r.seed},
                {"initial_loss", r.initial_loss},
                {"best_loss", r.best_loss},
                {"iterations", r.iterations},
                {"success_probability", r.success_probability},
                {"matched", r.matched}};
}

RestartSummary restart_from_json(const Json &j) {
    RestartSummary r;
    r.index = j.at("index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.initial_loss = j.at("initial_loss").get<double>();
    r.best_loss = j.at("best_loss").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.success_probability = j.at("success_probability").get<double>();
    r.matched = j.at("matched").get<int>();
    return r;
}

BsFlag flag_from_name(const std::string &s) {
    for (BsFlag f : {BsFlag::Kept, BsFlag::RoundedTrivial, BsFlag::RoundedSwap}) {
        if (s == bs_flag_name(f)) {
            return f;
        }
    }
    throw std::invalid_argument("Unknown beamsplitter flag '" + s + "'.");
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string config_hash(const Json &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string dump_json(const Json &j) {
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("Cannot open " + path.string() + " for writing.");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("Failed writing " + path.string() + ".");
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("Cannot open " + path.string() + ".");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::filesystem::path &path) {
    try {
        return Json::parse(read_text_file(path));
    } catch (const Json::parse_error &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json occupancy_to_json(const Occupancy &o) {
    return Json(o.counts());
}

Occupancy occupancy_from_json(const Json &j) {
    return Occupancy(j.get<std::vector<int>>());
}

Json matrix_to_json(const Eigen::MatrixXcd &u) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < u.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < u.cols(); c++) {
            row.push_back(Json::array({u(r, c).real(), u(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("Matrix must be a non-empty array of rows.");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd u(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw std::invalid_argument("Matrix rows have different lengths.");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            const Json &e = j[r][c];
            if (e.is_number()) {
                u(r, c) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                u(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw std::invalid_argument("Matrix entries must be numbers or [re, im] pairs.");
            }
        }
    }
    return u;
}

Json state_to_json(const PureState &s) {
    Json out = Json::array();
    for (const auto &[occ, amp] : s.amplitudes()) {
        out.push_back(Json{{"occupancy", occupancy_to_json(occ)}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return out;
}

PureState state_from_json(const Json &j, std::size_t modes) {
    PureState s(modes);
    for (const auto &e : j) {
        s.set(occupancy_from_json(e.at("occupancy")), Complex(e.at("re").get<double>(), e.at("im").get<double>()));
    }
    return s;
}

Json outcome_to_json(const HeraldedOutcome &o) {
    return Json{{"pattern", occupancy_to_json(o.ancilla_pattern)},
                {"probability", o.probability},
                {"state", state_to_json(o.conditional_state)}};
}

HeraldedOutcome outcome_from_json(const Json &j, std::size_t signal_modes) {
    return HeraldedOutcome{occupancy_from_json(j.at("pattern")), j.at("probability").get<double>(),
                           state_from_json(j.at("state"), signal_modes)};
}

Json partition_to_json(const ModePartition &p) {
    return Json{{"signal_modes", p.signal_modes},
                {"ancilla_modes", p.ancilla_modes},
                {"signal_photons", p.signal_photons},
                {"ancilla_photons", p.ancilla_photons}};
}

ModePartition partition_from_json(const Json &j) {
    return ModePartition::make(j.at("signal_modes").get<int>(), j.at("ancilla_modes").get<int>(),
                               j.at("signal_photons").get<int>(), j.at("ancilla_photons").get<int>());
}

Json fabric_to_json(const Fabric &f) {
    Json layers = Json::array();
    for (const auto &layer : f.layers) {
        Json l = Json::array();
        for (const auto &b : layer) {
            l.push_back(bs_to_json(b));
        }
        layers.push_back(std::move(l));
    }
    Json phases = Json::array();
    for (const auto &p : f.output_phases) {
        phases.push_back(Json{{"i", p.i}, {"phi", p.phi}});
    }
    return Json{{"m", f.m}, {"layers", layers}, {"output_phases", phases}};
}

Fabric fabric_from_json(const Json &j) {
    Fabric f;
    f.m = j.at("m").get<int>();
    for (const auto &l : j.at("layers")) {
        std::vector<BeamsplitterParams> layer;
        for (const auto &b : l) {
            layer.push_back(bs_from_json(b));
        }
        f.layers.push_back(std::move(layer));
    }
    for (const auto &p : j.at("output_phases")) {
        f.output_phases.push_back(PhaseshifterParams{p.at("i").get<int>(), p.at("phi").get<double>()});
    }
    f.validate();
    return f;
}

Json circuit_to_json(const CircuitFile &c) {
    Json bss = Json::array();
    for (const auto &b : c.circuit.beamsplitters) {
        bss.push_back(bs_to_json(b));
    }
    return Json{{"m", c.circuit.m},
                {"input", occupancy_to_json(c.input)},
                {"permutation", c.circuit.permutation},
                {"phases", c.circuit.phases},
                {"beamsplitters", bss}};
}

CircuitFile circuit_from_json(const Json &j) {
    CircuitFile c;
    c.circuit.m = j.at("m").get<int>();
    c.input = occupancy_from_json(j.at("input"));
    c.circuit.permutation = j.at("permutation").get<std::vector<int>>();
    c.circuit.phases = j.at("phases").get<std::vector<double>>();
    for (const auto &b : j.at("beamsplitters")) {
        c.circuit.beamsplitters.push_back(bs_from_json(b));
    }
    const auto m = static_cast<std::size_t>(c.circuit.m);
    if (c.circuit.m < 1 || c.input.modes() != m || c.circuit.permutation.size() != m || c.circuit.phases.size() != m) {
        throw std::invalid_argument("Circuit JSON: input, permutation and phases need one entry per mode.");
    }
    std::vector<bool> seen(m, false);
    for (int p : c.circuit.permutation) {
        if (p < 0 || p >= c.circuit.m || seen[p]) {
            throw std::invalid_argument("Circuit JSON: permutation is not a bijection.");
        }
        seen[p] = true;
    }
    for (const auto &b : c.circuit.beamsplitters) {
        if (b.i < 0 || b.j <= b.i || b.j >= c.circuit.m) {
            throw std::invalid_argument("Circuit JSON: beamsplitter modes need 0 <= i < j < m.");
        }
    }
    return c;
}

Json discovery_to_json(const DiscoveryArtifact &a) {
    Json heralds = Json::array();
    for (const auto &o : a.heralds) {
        heralds.push_back(outcome_to_json(o));
    }
    Json restarts = Json::array();
    for (const auto &r : a.restarts) {
        restarts.push_back(restart_to_json(r));
    }
    return Json{{"kind", "discovery"},
                {"config_hash", a.config_hash},
                {"seed", a.seed},
                {"config", a.config},
                {"input", occupancy_to_json(a.input)},
                {"partition", partition_to_json(a.partition)},
                {"matrix", matrix_to_json(a.u)},
                {"heralds", heralds},
                {"success_probability", a.success_probability},
                {"matched", a.matched},
                {"best_restart", a.best_restart},
                {"restarts", restarts},
                {"loss_trace", a.loss_trace}};
}

DiscoveryArtifact discovery_from_json(const Json &j) {
    if (j.value("kind", "") != "discovery") {
        throw std::invalid_argument("Not a discovery artifact.");
    }
    DiscoveryArtifact a;
    a.config_hash = j.at("config_hash").get<std::string>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.config = j.at("config");
    a.input = occupancy_from_json(j.at("input"));
    a.partition = partition_from_json(j.at("partition"));
    a.u = matrix_from_json(j.at("matrix"));
    for (const auto &o : j.at("heralds")) {
        a.heralds.push_back(outcome_from_json(o, static_cast<std::size_t>(a.partition.signal_modes)));
    }
    a.success_probability = j.at("success_probability").get<double>();
    a.matched = j.at("matched").get<int>();
    a.best_restart = j.at("best_restart").get<int>();
    for (const auto &r : j.at("restarts")) {
        a.restarts.push_back(restart_from_json(r));
    }
    a.loss_trace = j.at("loss_trace").get<std::vector<double>>();
    return a;
}

Json sparsify_to_json(const SparsifyArtifact &a) {
    const auto &r = a.result;
    Json deltas = Json::array();
    for (const auto &d : r.deltas) {
        deltas.push_back(Json{{"pattern", occupancy_to_json(d.pattern)},
                              {"before", d.before},
                              {"after", d.after},
                              {"fidelity", d.fidelity}});
    }
    Json flags = Json::array();
    for (const auto &layer : r.flags) {
        Json l = Json::array();
        for (BsFlag f : layer) {
            l.push_back(bs_flag_name(f));
        }
        flags.push_back(std::move(l));
    }
    return Json{{"kind", "sparsify"},
                {"config_hash", a.config_hash},
                {"seed", a.seed},
                {"config", a.config},
                {"status", r.improved ? "IMPROVED" : "NO_IMPROVEMENT"},
                {"input", occupancy_to_json(a.input)},
                {"partition", partition_to_json(a.partition)},
                {"count_before", r.count_before},
                {"count_after", r.count_after},
                {"fidelity_loss", r.fidelity_loss},
                {"deltas", deltas},
                {"flags", flags},
                {"removable_modes", r.removable_modes},
                {"best_restart", r.best_restart},
                {"preserving_restarts", r.preserving_restarts},
                {"loss_trace", r.loss_trace},
                {"fabric", fabric_to_json(r.fabric)}};
}

SparsifyArtifact sparsify_from_json(const Json &j) {
    if (j.value("kind", "") != "sparsify") {
        throw std::invalid_argument("Not a sparsify artifact.");
    }
    SparsifyArtifact a;
    a.config_hash = j.at("config_hash").get<std::string>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.config = j.at("config");
    a.input = occupancy_from_json(j.at("input"));
    a.partition = partition_from_json(j.at("partition"));
    auto &r = a.result;
    r.improved = j.at("status").get<std::string>() == "IMPROVED";
    r.count_before = j.at("count_before").get<int>();
    r.count_after = j.at("count_after").get<int>();
    r.fidelity_loss = j.at("fidelity_loss").get<double>();
    for (const auto &d : j.at("deltas")) {
        r.deltas.push_back(HeraldDelta{occupancy_from_json(d.at("pattern")), d.at("before").get<double>(),
                                       d.at("after").get<double>(), d.at("fidelity").get<double>()});
    }
    for (const auto &l : j.at("flags")) {
        std::vector<BsFlag> layer;
        for (const auto &f : l) {
            layer.push_back(flag_from_name(f.get<std::string>()));
        }
        r.flags.push_back(std::move(layer));
    }
    r.removable_modes = j.at("removable_modes").get<std::vector<int>>();
    r.best_restart = j.at("best_restart").get<int>();
    r.preserving_restarts = j.at("preserving_restarts").get<int>();
    r.loss_trace = j.at("loss_trace").get<std::vector<double>>();
    r.fabric = fabric_from_json(j.at("fabric"));
    return a;
}

std::string outcomes_csv(const std::vector<HeraldedOutcome> &outcomes, const std::vector<PureState> &targets) {
    std::string out = "pattern,probability,matched_target,fidelity,state\n";
    for (const auto &o : outcomes) {
        int best = -1;
        double best_f = 0;
        for (std::size_t t = 0; t < targets.size(); t++) {
            double f = fidelity(targets[t], o.conditional_state);
            if (best < 0 || f > best_f) {
                best = static_cast<int>(t);
                best_f = f;
            }
        }
        std::string state;
        for (const auto &[occ, amp] : o.conditional_state.amplitudes()) {
            if (!state.empty()) {
                state += " ";
            }
            state += occ.str() + ":" + csv_number(amp.real()) + (amp.imag() < 0 ? "" : "+") + csv_number(amp.imag()) + "i";
        }
        out += csv_field(o.ancilla_pattern.str()) + "," + csv_number(o.probability) + "," +
               (best < 0 ? std::string() : std::to_string(best)) + "," + (best < 0 ? std::string() : csv_number(best_f)) +
               "," + csv_field(state) + "\n";
    }
    return out;
}

std::string baseline_csv(const std::vector<BaselineEntry> &entries) {
    std::string out = "graph,edges,vertices,direct,lc_optimized,representative,discovered,improvement\n";
    for (const auto &e : entries) {
        const auto &r = e.row;
        out += csv_field(e.id.empty() ? r.graph.str() : e.id) + "," + std::to_string(r.edges) + "," +
               std::to_string(r.vertices) + "," + csv_number(r.direct) + "," + csv_number(r.lc_optimized) + "," +
               csv_field(r.representative.str()) + ",";
        if (e.discovered >= 0) {
            out += csv_number(e.discovered) + "," + format_sig2(improvement_ratio(e.discovered, r.lc_optimized));
        } else {
            out += ",";
        }
        out += "\n";
    }
    return out;
}

}  // namespace heraldgen
