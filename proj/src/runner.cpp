#include "lobres/runner.hpp"

#include <cmath>
#include <fstream>
#include <functional>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "lobres/order_book.hpp"
#include "lobres/strategy.hpp"
#include "lobres/wealth.hpp"

namespace lobres {

namespace {

// Measured on the reference container; only used for the validate estimate.
constexpr double kSecondsPerStep = 4e-8;

class Artifacts {
public:
    explicit Artifacts(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            throw OutputError(fmt::format("cannot create {}: {}", dir_.string(), ec.message()));
        }
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (out) {
            body(out);
            out.flush();
        }
        if (!out) {
            throw OutputError("cannot write " + path.string());
        }
        files.push_back(name);
    }

    std::vector<std::string> files;

private:
    std::filesystem::path dir_;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

double default_slope(ExperimentKind kind) {
    return kind == ExperimentKind::Theorem1 ? -1.5 : -0.9;
}

void write_spreads_csv(std::ostream& out, const SpreadPaths& spreads) {
    const TimeGrid& g = spreads.ask.total.grid();
    out << "t,ask_spread,bid_spread,ask_excess,bid_excess\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", g.time(i),
                           spreads.ask.total[i], spreads.bid.total[i], spreads.ask.excess[i],
                           spreads.bid.excess[i]);
    }
}

std::vector<Gate> run_simulate(const RunConfig& c, Artifacts& art) {
    const TimeGrid grid = c.grid.grid_for(c.kappa);
    RandomSource rng(c.mc.seed, 0);
    const SampledPath s = c.fundamental.from_brownian(sample_brownian(grid, rng));
    const BookParams book = c.book.instantiate(grid, c.kappa);
    const Strategy strategy = c.strategy.build(grid, s);

    art.write("strategy.csv", [&](std::ostream& o) { write_strategy_csv(o, strategy); });
    art.write("spreads.csv",
              [&](std::ostream& o) { write_spreads_csv(o, evolve_spreads(book, strategy)); });
    const WealthPath ow = ow_wealth(book, strategy, s, c.x0);
    art.write("wealth_ow.csv", [&](std::ostream& o) { write_wealth_csv(o, ow); });
    if (!strategy.has_blocks()) {
        const WealthPath ac = ac_wealth(book, strategy, s, c.x0);
        art.write("wealth_ac.csv", [&](std::ostream& o) { write_wealth_csv(o, ac); });
    }

    // The marked safe account must reproduce the wealth path.
    const SafeAccountPath safe = safe_account(book, strategy, s, c.x0);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double marked = safe.marked_wealth(i);
        const double scale = std::max({1.0, std::abs(marked), std::abs(ow.wealth[i])});
        worst = std::max(worst, std::abs(ow.wealth[i] - marked) / scale);
    }
    return {{"wealth equals cash plus marked position (rel 1e-10)", worst <= 1e-10,
             "max relative gap " + num(worst)}};
}

std::vector<Gate> run_convergence(const RunConfig& c, Artifacts& art) {
    const ExperimentSetup setup = experiment_setup(c);
    ConvergenceReport report;
    std::vector<Gate> gates;
    const double slope = c.gates.max_slope.value_or(default_slope(c.experiment));
    switch (c.experiment) {
        case ExperimentKind::Theorem1:
            report = theorem1_experiment(setup);
            gates = convergence_gates(report, 1.0, true, slope);
            break;
        case ExperimentKind::Remark1:
            report = remark1_experiment(setup);
            gates = convergence_gates(report, 0.5, false, slope);
            break;
        default:
            report = l2_convergence_experiment(setup, c.l2);
            gates = convergence_gates(report, 1.0, false, slope);
            break;
    }
    art.write("convergence.csv", [&](std::ostream& o) { write_convergence_csv(o, report); });
    return gates;
}

std::vector<Gate> run_lemma(const RunConfig& c, Artifacts& art) {
    const LemmaReport report = lemma_jump_experiment(experiment_setup(c), c.lemma_window);
    art.write("lemma.csv", [&](std::ostream& o) { write_lemma_csv(o, report); });
    return lemma_gates(report, c.gates.tolerance, c.gates.min_positive_fraction.value_or(0.95));
}

std::vector<Gate> run_tracker_bound(const RunConfig& c, Artifacts& art) {
    const TrackerBoundReport report = tracker_bound_experiment(tracker_bound_setup(c));
    art.write("tracker_bound.csv", [&](std::ostream& o) { write_tracker_bound_csv(o, report); });
    return tracker_bound_gates(report);
}

std::vector<Gate> run_utility(const RunConfig& c, Artifacts& art) {
    const UtilityReport report = utility_experiment(utility_setup(c));
    art.write("utility.csv", [&](std::ostream& o) { write_utility_csv(o, report); });
    return utility_gates(report);
}

}  // namespace

RunOutcome run_experiment(const RunConfig& config, const std::filesystem::path& out) {
    Artifacts art(out);
    RunOutcome outcome;
    switch (config.experiment) {
        case ExperimentKind::Simulate: outcome.gates = run_simulate(config, art); break;
        case ExperimentKind::Theorem1:
        case ExperimentKind::Remark1:
        case ExperimentKind::L2: outcome.gates = run_convergence(config, art); break;
        case ExperimentKind::LemmaJump: outcome.gates = run_lemma(config, art); break;
        case ExperimentKind::TrackerBound: outcome.gates = run_tracker_bound(config, art); break;
        case ExperimentKind::Utility: outcome.gates = run_utility(config, art); break;
    }

    nlohmann::ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["experiment"] = to_string(config.experiment);
    summary["config_hash"] = config_hash(config);
    summary["seed"] = config.mc.seed;
    summary["paths"] = config.mc.paths;
    summary["all_passed"] = outcome.passed();
    summary["gates"] = nlohmann::ordered_json::array();
    for (const Gate& g : outcome.gates) {
        summary["gates"].push_back({{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
    }
    summary["files"] = art.files;
    art.write("summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
    outcome.files = art.files;
    return outcome;
}

RunEstimate estimate_run(const RunConfig& c) {
    const KappaLadder ladder = c.ladder();
    const double paths = static_cast<double>(c.mc.paths);
    double steps = 0.0;
    double stored = 0.0;  // doubles held at once
    switch (c.experiment) {
        case ExperimentKind::Simulate:
            steps = static_cast<double>(c.grid.steps_for(c.kappa));
            stored = 40.0 * steps;
            break;
        case ExperimentKind::Utility: {
            double cells = 0.0;
            for (double m : c.utility.multipliers) {
                (void)m;
                cells += 1.0;
                steps += static_cast<double>(c.grid.steps_for(c.kappa));
            }
            for (double k : ladder.values()) {
                if (k != c.kappa) {
                    cells += 1.0;
                    steps += static_cast<double>(c.grid.steps_for(k));
                }
            }
            steps *= 2.0 * paths;
            stored = 2.0 * cells * paths + 40.0 * static_cast<double>(c.grid.steps_for(ladder.max()));
            break;
        }
        default:
            for (double k : ladder.values()) {
                steps += static_cast<double>(c.grid.steps_for(k));
            }
            steps *= paths;
            stored = static_cast<double>(ladder.size()) * paths +
                     40.0 * static_cast<double>(c.grid.steps_for(ladder.max()));
            break;
    }
    return {steps, steps * kSecondsPerStep, 8.0 * stored, steps > c.budget};
}

}  // namespace lobres
