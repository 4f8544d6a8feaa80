// Copyright 2026 The hcut Authors
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

// hcut_cli: seeded experiment harness.
//
//   hcut_cli <verb> [--config PATH] [--seed U64] [--out DIR] [--override KEY=VALUE]...
//
// Verbs: purity-scan, dist-scan, planted-sweep, estimator-demo, abelian-demo.
// Log level comes from SPDLOG_LEVEL (e.g. SPDLOG_LEVEL=debug).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcut/experiments.hpp"
#include "spdlog/cfg/env.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
};

hcut::Json load_document(const Options &opt) {
    if (opt.config_path.empty()) {
        return hcut::Json::object();
    }
    std::ifstream in(opt.config_path);
    if (!in) {
        throw hcut::ConfigError("cannot open config file '" + opt.config_path + "'");
    }
    auto doc = hcut::Json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
        throw hcut::ConfigError("config file '" + opt.config_path + "' is not valid JSON");
    }
    return doc;
}

void write_artifact(const std::filesystem::path &dir, const hcut::Artifact &a) {
    const auto path = dir / a.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw hcut::ConfigError("cannot write '" + path.string() + "'");
    }
    out << a.content;
    spdlog::info("wrote {} ({} bytes)", path.string(), a.content.size());
}

int run(const std::string &verb, const Options &opt) {
    auto doc = load_document(opt);
    for (const auto &o : opt.overrides) {
        hcut::apply_override(doc, o);
    }
    if (opt.seed) {
        doc["seed"] = *opt.seed;
    }
    doc["experiment"] = verb;
    const auto config = hcut::config_from_json(doc);
    spdlog::debug("resolved config {}", hcut::to_json(config).dump());

    std::filesystem::create_directories(opt.out_dir);
    spdlog::info("{}: seed {}", verb, config.seed);
    for (const auto &artifact : hcut::run_experiment(verb, config)) {
        write_artifact(opt.out_dir, artifact);
    }
    return 0;
}

void report_error(const std::string &kind, const std::string &message) {
    hcut::Json err{{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    auto logger = spdlog::stderr_color_mt("hcut");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    spdlog::cfg::load_env_levels();

    CLI::App app{"Hidden cut toolkit experiment harness"};
    app.require_subcommand(1);
    Options opt;
    const std::vector<std::pair<std::string, std::string>> verbs{
        {"purity-scan", "Subsystem purity P(s) and P^t(s) for every mask"},
        {"dist-scan", "Output distribution p_t(x) for every requested t"},
        {"planted-sweep", "Planted cut success probability over seeds, phi and t"},
        {"estimator-demo", "Purity estimator statistics and the swap test comparison"},
        {"abelian-demo", "Distributions over finite abelian groups"},
    };
    for (const auto &[name, help] : verbs) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--seed", opt.seed, "Master seed (overrides config)");
        sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--override", opt.overrides, "KEY=VALUE config override, dotted keys")->take_all();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        report_error("usage", e.what());
        return 2;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return run(verb, opt);
    } catch (const hcut::Error &e) {
        report_error(e.kind(), e.what());
        return 1;
    } catch (const std::exception &e) {
        report_error("internal", e.what());
        return 3;
    }
}
