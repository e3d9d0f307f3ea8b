// lobres: run one configured experiment and write CSV + JSON artifacts.
//
// Exit status: 0 all gates passed, 1 a gate failed, 2 bad config or usage,
// 3 output could not be written, 4 the experiment itself failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "lobres/config.hpp"
#include "lobres/runner.hpp"

namespace {

bool subcommand_accepts(const std::string& sub, lobres::ExperimentKind kind) {
    using lobres::ExperimentKind;
    if (sub == "validate") {
        return true;
    }
    if (sub == "simulate") {
        return kind == ExperimentKind::Simulate;
    }
    if (sub == "utility") {
        return kind == ExperimentKind::Utility;
    }
    return kind == ExperimentKind::Theorem1 || kind == ExperimentKind::Remark1 ||
           kind == ExperimentKind::LemmaJump || kind == ExperimentKind::TrackerBound ||
           kind == ExperimentKind::L2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-shaped order book simulator and high-resilience experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string log_level = "info";
    for (const char* name : {"simulate", "converge", "utility", "validate"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value run file")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "output directory (default: config 'output')");
        sub->add_option("--log-level", log_level, "trace|debug|info|warn|error|off");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::from_str(log_level));

    lobres::RunConfig config;
    try {
        std::ifstream in(config_path);
        if (!in) {
            spdlog::error("cannot read {}", config_path);
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        config = lobres::parse_config(text.str());
    } catch (const lobres::ParseError& e) {
        spdlog::error("parse-error: {}", e.what());
        return 2;
    } catch (const lobres::ValidationError& e) {
        spdlog::error("validation-error: {}", e.what());
        return 2;
    }
    if (seed) {
        config.mc.seed = *seed;
    }
    if (!subcommand_accepts(sub, config.experiment)) {
        spdlog::error("'{}' cannot run experiment '{}'", sub, lobres::to_string(config.experiment));
        return 2;
    }

    if (sub == "validate") {
        const lobres::RunEstimate est = lobres::estimate_run(config);
        std::cout << fmt::format("ok experiment={} hash={} steps={:.3g} est_seconds={:.3g} "
                                 "est_memory_mb={:.3g}\n",
                                 lobres::to_string(config.experiment), lobres::config_hash(config),
                                 est.step_evaluations, est.seconds, est.memory_bytes / 1e6);
        if (est.over_budget) {
            spdlog::warn("estimated {:.3g} step evaluations exceed budget {:.3g}",
                         est.step_evaluations, config.budget);
        }
        return 0;
    }

    const std::string out = out_dir.value_or(config.output);
    spdlog::info("running {} (seed {}, {} paths) into {}", lobres::to_string(config.experiment),
                 config.mc.seed, config.mc.paths, out);
    try {
        const lobres::RunOutcome outcome = lobres::run_experiment(config, out);
        for (const lobres::Gate& g : outcome.gates) {
            std::cout << (g.passed ? "PASS " : "FAIL ") << g.name << " [" << g.detail << "]\n";
        }
        return outcome.passed() ? 0 : 1;
    } catch (const lobres::OutputError& e) {
        spdlog::error("{}", e.what());
        return 3;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 4;
    }
}
