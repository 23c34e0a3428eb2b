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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "heraldgen/discover.hpp"
#include "heraldgen/serialize.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

TEST(Serialize, ConfigHashIsStableAndKeyOrderFree) {
    Json a = Json::parse(R"({"restarts": 4, "target": "bell"})");
    Json b = Json::parse(R"({"target": "bell", "restarts": 4})");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b["restarts"] = 5;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Serialize, CsvNumberRoundTrips) {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int t = 0; t < 100; t++) {
        double v = u(rng) * std::pow(10.0, t % 20 - 10);
        EXPECT_EQ(std::stod(csv_number(v)), v);
    }
}

TEST(Serialize, MatrixRoundTripIsExact) {
    std::mt19937_64 rng(92);
    auto u = haar_unitary(5, rng).matrix();
    auto j = matrix_to_json(u);
    EXPECT_EQ(matrix_from_json(j), u);
    EXPECT_EQ(matrix_from_json(Json::parse(j.dump())), u);
    auto real = matrix_from_json(Json::parse("[[1, 0], [0, 1]]"));
    EXPECT_EQ(real, Eigen::MatrixXcd::Identity(2, 2));
}

TEST(Serialize, FabricRoundTripIsExact) {
    std::mt19937_64 rng(93);
    for (int m = 1; m <= 7; m++) {
        auto f = testing::random_sparse_fabric(m, rng);
        auto text = dump_json(fabric_to_json(f));
        EXPECT_EQ(fabric_from_json(Json::parse(text)), f);
        EXPECT_EQ(dump_json(fabric_to_json(fabric_from_json(Json::parse(text)))), text);
    }
    auto bad = fabric_to_json(Fabric::identity(3));
    bad["layers"].erase(0);
    EXPECT_THROW(fabric_from_json(bad), std::invalid_argument);
}

TEST(Serialize, StateAndOutcome) {
    PureState s(3);
    s.set(Occupancy{2, 0, 1}, Complex(0.6, -0.1));
    s.set(Occupancy{0, 1, 2}, Complex(0, 0.3));
    auto back = state_from_json(Json::parse(state_to_json(s).dump()), 3);
    EXPECT_EQ(back.amplitudes(), s.amplitudes());
    HeraldedOutcome o{Occupancy{1, 1}, 0.25, s};
    auto ob = outcome_from_json(outcome_to_json(o), 3);
    EXPECT_EQ(ob.ancilla_pattern, o.ancilla_pattern);
    EXPECT_EQ(ob.probability, o.probability);
}

TEST(Serialize, CircuitRoundTrip) {
    std::mt19937_64 rng(94);
    auto f = testing::random_sparse_fabric(5, rng);
    CircuitFile c{compile_fabric(f), Occupancy{1, 1, 1, 0, 0}};
    auto text = dump_json(circuit_to_json(c));
    auto back = circuit_from_json(Json::parse(text));
    EXPECT_EQ(back.circuit, c.circuit);
    EXPECT_EQ(back.input, c.input);
    EXPECT_EQ(dump_json(circuit_to_json(back)), text);
    auto j = circuit_to_json(c);
    j["permutation"] = Json::array({0, 0, 1, 2, 3});
    EXPECT_THROW(circuit_from_json(j), std::invalid_argument);
}

TEST(Serialize, DiscoveryArtifactReserializesIdentically) {
    LossConfig loss;
    loss.targets = pauli_orbit(bell_qubit_state());
    loss.partition = ModePartition::make(4, 1, 2, 2);
    OptimConfig c;
    c.max_iters = 20;
    c.restarts = 2;
    auto r = optimize_stage1(c, loss, Occupancy{1, 1, 1, 1, 0});
    DiscoveryArtifact a;
    a.config = Json{{"target", "bell"}};
    a.config_hash = config_hash(a.config);
    a.seed = 0;
    a.input = Occupancy{1, 1, 1, 1, 0};
    a.partition = loss.partition;
    a.u = r.u.matrix();
    a.heralds = r.outcomes;
    a.success_probability = r.success.probability;
    a.matched = r.success.matched;
    a.best_restart = r.best_restart;
    a.restarts = r.restarts;
    a.loss_trace = r.loss_trace;
    auto text = dump_json(discovery_to_json(a));
    auto back = discovery_from_json(Json::parse(text));
    EXPECT_EQ(back.u, a.u);
    EXPECT_EQ(back.loss_trace, a.loss_trace);
    EXPECT_EQ(dump_json(discovery_to_json(back)), text);
    EXPECT_THROW(sparsify_from_json(Json::parse(text)), std::invalid_argument);
}

TEST(Serialize, SparsifyArtifactReserializesIdentically) {
    SparsifyArtifact a;
    a.config = Json{{"lambda_reg", 0.05}};
    a.config_hash = config_hash(a.config);
    a.input = Occupancy{1, 1, 1, 1, 0};
    a.partition = ModePartition::make(4, 1, 2, 2);
    std::mt19937_64 rng(95);
    a.result.fabric = testing::random_sparse_fabric(5, rng);
    a.result.count_before = 10;
    a.result.count_after = 6;
    a.result.improved = true;
    a.result.deltas.push_back(HeraldDelta{Occupancy{2}, 1.0 / 9, 0.111, 0.99999});
    a.result.flags = {{BsFlag::Kept, BsFlag::RoundedSwap}, {BsFlag::RoundedTrivial}};
    a.result.removable_modes = {4};
    a.result.loss_trace = {0.5, 0.25};
    auto text = dump_json(sparsify_to_json(a));
    auto back = sparsify_from_json(Json::parse(text));
    EXPECT_EQ(back.result.fabric, a.result.fabric);
    EXPECT_TRUE(back.result.improved);
    EXPECT_EQ(dump_json(sparsify_to_json(back)), text);
}

TEST(Serialize, CsvTables) {
    PureState s(2);
    s.set(Occupancy{1, 0}, 1);
    HeraldedOutcome o{Occupancy{2}, 0.5, s};
    auto csv = outcomes_csv({o}, {s});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "pattern,probability,matched_target,fidelity,state");
    EXPECT_NE(csv.find(",0.5,0,1,"), std::string::npos);

    BaselineEntry e{baseline_row(LabeledGraph::star(4)), "star4", 7.813e-3};
    auto b = baseline_csv({e});
    EXPECT_NE(b.find("star4,3,4,"), std::string::npos);
    EXPECT_NE(b.find(",4.7\n"), std::string::npos);
}

TEST(Serialize, FileHelpers) {
    auto dir = std::filesystem::temp_directory_path() / "heraldgen_serialize_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_text_file(dir / "x.json", "{\"a\": 1}\n");
    EXPECT_EQ(read_json_file(dir / "x.json")["a"], 1);
    EXPECT_THROW(read_text_file(dir / "missing.json"), std::runtime_error);
    std::filesystem::remove_all(dir.parent_path());
}

}  // namespace
}  // namespace heraldgen
