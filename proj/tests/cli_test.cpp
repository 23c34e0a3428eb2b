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

#include "commands.hpp"
#include "heraldgen/discover.hpp"
#include "heraldgen/serialize.hpp"
#include "heraldgen/sparsify.hpp"
#include "test_util.hpp"

namespace heraldgen {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / "heraldgen_cli_test" / info->name();
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        opts_.out = dir_;
        opts_.config_dir = dir_;
        opts_.workers = 1;
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path dir_;
    cli::RunOptions opts_;
};

Json bell_partition() {
    return partition_to_json(ModePartition::make(4, 1, 2, 2));
}

TEST_F(CliTest, SimulateBellReference) {
    Json cfg{{"matrix", "bell_reference"}, {"partition", bell_partition()}, {"target", "bell"}};
    auto r = cli::cmd_simulate(cfg, opts_);
    EXPECT_NEAR(r["success"]["probability"].get<double>(), 1.0 / 9, 1e-12);
    EXPECT_EQ(r["success"]["matched"], 1);
    EXPECT_TRUE(fs::exists(dir_ / "simulate.json"));
    EXPECT_TRUE(fs::exists(dir_ / "simulate.csv"));
}

TEST_F(CliTest, SimulateIdentityAndCompleteness) {
    Json id = Json::array();
    for (int r = 0; r < 6; r++) {
        Json row = Json::array();
        for (int c = 0; c < 6; c++) {
            row.push_back(r == c ? 1.0 : 0.0);
        }
        id.push_back(row);
    }
    Json cfg{{"matrix", id}, {"input", {1, 0, 2, 0, 0, 1}}, {"signal_modes", 6}};
    auto r = cli::cmd_simulate(cfg, opts_);
    ASSERT_EQ(r["heralds"].size(), 1u);
    EXPECT_NEAR(r["heralds"][0]["probability"].get<double>(), 1.0, 1e-12);

    std::mt19937_64 rng(101);
    cfg = Json{{"matrix", matrix_to_json(haar_unitary(6, rng).matrix())}, {"input", {1, 1, 1, 0, 0, 0}},
               {"signal_modes", 3}};
    r = cli::cmd_simulate(cfg, opts_);
    EXPECT_NEAR(r["total_probability"].get<double>(), 1.0, 1e-10);
}

TEST_F(CliTest, UnknownKeyIsAConfigError) {
    Json cfg{{"target", "bell"}, {"restart", 3}};
    try {
        cli::cmd_discover(cfg, opts_);
        FAIL() << "expected a config error";
    } catch (const cli::ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("unknown config key 'restart'"), std::string::npos);
    }
    EXPECT_THROW(cli::cmd_simulate(Json{{"input", {1}}}, opts_), cli::ConfigError);
    EXPECT_THROW(cli::cmd_bench(Json{{"repetitions", 3}}, opts_), cli::ConfigError);
}

TEST_F(CliTest, DiscoverIsDeterministic) {
    Json cfg{{"target", "bell"}, {"restarts", 2}, {"max_iters", 40}, {"seed", 7}};
    auto a = cli::cmd_discover(cfg, opts_);
    auto text = read_text_file(dir_ / "discovery.json");
    opts_.workers = 2;
    auto b = cli::cmd_discover(cfg, opts_);
    EXPECT_EQ(read_text_file(dir_ / "discovery.json"), text);
    EXPECT_EQ(a["config_hash"], b["config_hash"]);
    opts_.seed = 8;
    auto c = cli::cmd_discover(cfg, opts_);
    EXPECT_NE(a["config_hash"], c["config_hash"]);
    EXPECT_EQ(c["seed"], 8);
}

TEST_F(CliTest, SparsifyReportsNoImprovement) {
    DiscoveryArtifact a;
    a.config = Json{{"target", "bell"}};
    a.config_hash = config_hash(a.config);
    a.input = Occupancy{1, 0, 1, 0, 0};
    a.partition = ModePartition::make(4, 1, 2, 0);
    a.u = Eigen::MatrixXcd::Identity(5, 5);
    write_text_file(dir_ / "disc.json", dump_json(discovery_to_json(a)));
    auto r = cli::cmd_sparsify(Json{{"discovery", "disc.json"}, {"max_iters", 30}}, opts_);
    EXPECT_EQ(r["status"], "NO_IMPROVEMENT");
    EXPECT_EQ(r["count_after"], 0);
    EXPECT_TRUE(fs::exists(dir_ / "fabric.json"));
}

TEST_F(CliTest, BaselineTable) {
    Json cfg{{"graphs",
              {Json{{"id", "star4"}, {"family", "star"}, {"vertices", 4}, {"discovered", 7.813e-3}},
               Json{{"id", "k5"}, {"family", "complete"}, {"vertices", 5}, {"discovered", 1.157e-3}}}}};
    auto csv = cli::cmd_baseline(cfg, opts_)["csv"].get<std::string>();
    EXPECT_NE(csv.find(",4.7\n"), std::string::npos);
    EXPECT_NE(csv.find(",7.5\n"), std::string::npos);
    EXPECT_EQ(read_text_file(dir_ / "baseline.csv"), csv);

    auto plain = cli::cmd_baseline(Json{{"graphs", {Json{{"family", "path"}, {"vertices", 3}}}}}, opts_)["csv"];
    EXPECT_NE(plain.get<std::string>().find(",,\n"), std::string::npos);
}

TEST_F(CliTest, BenchSkipsOverBudgetPoints) {
    opts_.memory_cap_bytes = std::size_t{1} << 20;
    Json cfg{{"points", {{4, 2}, {12, 8}}}, {"repetitions", 10}};
    auto r = cli::cmd_bench(cfg, opts_);
    ASSERT_EQ(r["rows"].size(), 2u);
    EXPECT_EQ(r["rows"][0]["status"], "ok");
    EXPECT_EQ(r["rows"][0]["samples"], 10);
    EXPECT_EQ(r["rows"][1]["status"], "skipped");
    EXPECT_NE(r["rows"][1]["reason"].get<std::string>().find("bytes"), std::string::npos);
}

TEST_F(CliTest, OrbitsReport) {
    auto r = cli::cmd_orbits(Json{{"qubits", 3}}, opts_);
    EXPECT_EQ(r["stabilizer_counts"]["3"], "1080");
    EXPECT_EQ(r["partition"]["total_states"], 1080);
    EXPECT_TRUE(r["partition"]["consistent"].get<bool>());
    for (const auto &g : r["graphs"]) {
        EXPECT_EQ(g["pauli_orbit"], 8);
    }
    auto line = cli::cmd_orbits(
        Json{{"qubits", 4}, {"partition", false}, {"graphs", {Json{{"family", "path"}, {"vertices", 4}}}}}, opts_);
    EXPECT_EQ(line["graphs"][0]["clifford_orbit"], 5184);
}

// Full pipeline on the Bell target: discover, sparsify, compile, then
// simulate the compiled circuit.
TEST_F(CliTest, BellPipelineEndToEnd) {
    cli::cmd_discover(Json{{"target", "bell"}, {"restarts", 4}, {"seed", 4}}, opts_);
    auto disc = read_json_file(dir_ / "discovery.json");
    EXPECT_NEAR(disc["success_probability"].get<double>(), 1.0 / 9, 1e-3);

    auto sp = cli::cmd_sparsify(
        Json{{"discovery", "discovery.json"}, {"lambda_reg", 0.1}, {"lr", 0.01}, {"restarts", 8}}, opts_);
    EXPECT_EQ(sp["status"], "IMPROVED");
    EXPECT_EQ(sp["count_after"], 5);

    auto circ = cli::cmd_compile(Json{{"fabric", "sparsify.json"}}, opts_);
    EXPECT_EQ(circ["beamsplitters"].size(), 5u);
    EXPECT_EQ(circ["seed"], sp["seed"]);
    EXPECT_EQ(circ["config_hash"].get<std::string>().size(), 16u);
    EXPECT_TRUE(fs::exists(dir_ / "circuit.txt"));

    auto sim = cli::cmd_simulate(
        Json{{"circuit_file", "circuit.json"}, {"partition", bell_partition()}, {"target", "bell"}}, opts_);
    EXPECT_NEAR(sim["success"]["probability"].get<double>(), 1.0 / 9, 1e-3);
}

}  // namespace
}  // namespace heraldgen
