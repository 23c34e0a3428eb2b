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


#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "verify_suite.hpp"

namespace {

using heraldgen::Json;
namespace cli = heraldgen::cli;

struct Common {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::size_t> mem_cap;
};

void add_common(CLI::App *sub, Common &c, bool needs_config) {
    auto *opt = sub->add_option("--config", c.config, "JSON config file");
    if (needs_config) {
        opt->required();
    }
    sub->add_option("--seed", c.seed, "Override the config seed");
    sub->add_option("--workers", c.workers, "Worker threads for restarts (0 = all cores)");
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--mem-cap", c.mem_cap, "Memory cap in bytes for a single simulation");
}

cli::RunOptions run_options(const Common &c) {
    cli::RunOptions o;
    o.out = c.out;
    o.seed = c.seed;
    o.workers = c.workers;
    o.memory_cap_bytes = c.mem_cap;
    if (!c.config.empty()) {
        o.config_dir = std::filesystem::path(c.config).parent_path();
        if (o.config_dir.empty()) {
            o.config_dir = ".";
        }
    }
    return o;
}

Json load_config(const Common &c) {
    return c.config.empty() ? Json::object() : heraldgen::read_json_file(c.config);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heralded linear-optics circuit discovery: simulate, discover, sparsify, compile and compare."};
    app.require_subcommand(1);

    Common common;
    std::vector<int> only;
    struct Cmd {
        const char *name;
        const char *help;
        bool needs_config;
        std::function<Json(const Json &, const cli::RunOptions &)> run;
    };
    const std::vector<Cmd> cmds{
        {"simulate", "Simulate a matrix, fabric or circuit and list heralded outcomes", true, cli::cmd_simulate},
        {"discover", "Stage-1 optimization of a transfer matrix for a target state set", true, cli::cmd_discover},
        {"sparsify", "Stage-2 sparsification of a discovered transfer matrix", true, cli::cmd_sparsify},
        {"compile", "Compile a fabric into a beamsplitter-only circuit", true, cli::cmd_compile},
        {"baseline", "Fusion baselines and improvement ratios as CSV", true, cli::cmd_baseline},
        {"bench", "Time restricted simulation over a mode/photon grid", true, cli::cmd_bench},
        {"orbits", "Stabilizer counts, orbit partitions and LC orbits", false, cli::cmd_orbits},
    };
    std::vector<CLI::App *> subs;
    for (const auto &c : cmds) {
        auto *sub = app.add_subcommand(c.name, c.help);
        add_common(sub, common, c.needs_config);
        subs.push_back(sub);
    }
    auto *verify = app.add_subcommand("verify", "Run the acceptance checks and print one line per criterion");
    add_common(verify, common, false);
    verify->add_option("--only", only, "Criterion numbers to run");

    CLI11_PARSE(app, argc, argv);

    std::string stage;
    try {
        if (verify->parsed()) {
            stage = "verify";
            heraldgen::VerifyOptions vo;
            vo.only = only;
            vo.workers = common.workers.value_or(0);
            if (common.seed) {
                vo.seed = *common.seed;
            }
            bool all = true;
            std::string text;
            for (const auto &r : heraldgen::run_verification(vo)) {
                auto line = heraldgen::format_result(r);
                std::cout << line << std::endl;
                text += line + "\n";
                all = all && r.passed;
            }
            heraldgen::write_text_file(std::filesystem::path(common.out) / "verify.txt", text);
            return all ? 0 : 1;
        }
        for (std::size_t k = 0; k < cmds.size(); k++) {
            if (!subs[k]->parsed()) {
                continue;
            }
            stage = cmds[k].name;
            Json result = cmds[k].run(load_config(common), run_options(common));
            if (stage == "baseline" || stage == "bench") {
                std::cout << result.at("csv").get<std::string>();
            } else if (stage == "compile") {
                std::cout << cli::instruction_table(heraldgen::circuit_from_json(result));
            } else if (stage == "discover") {
                std::cout << "success_probability " << result.at("success_probability").get<double>() << " matched "
                          << result.at("matched").get<int>() << " best_restart " << result.at("best_restart").get<int>()
                          << " config_hash " << result.at("config_hash").get<std::string>() << "\n";
            } else if (stage == "sparsify") {
                std::cout << result.at("status").get<std::string>() << " generic beamsplitters "
                          << result.at("count_before").get<int>() << " -> " << result.at("count_after").get<int>()
                          << " config_hash " << result.at("config_hash").get<std::string>() << "\n";
            } else {
                std::cout << heraldgen::dump_json(result);
            }
        }
    } catch (const cli::ConfigError &e) {
        std::cerr << "heraldgen " << stage << ": config error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "heraldgen " << stage << ": error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
