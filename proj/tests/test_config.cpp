#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "lobres/config.hpp"
#include "lobres/runner.hpp"

using namespace lobres;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("lobres_test_config_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(ParseConfig, MinimalGetsDefaults) {
    const RunConfig c = parse_config("experiment = simulate\n");
    EXPECT_EQ(c.grid.base_steps, 512u);
    EXPECT_EQ(c.mc.paths, 1u);
    EXPECT_EQ(c.mc.seed, 42u);
    EXPECT_EQ(c, RunConfig{});
    EXPECT_EQ(parse_config(""), RunConfig{});
}

TEST(ParseConfig, CommentsAndWhitespace) {
    const RunConfig c = parse_config("# header\n\n  seed=7   # trailing\nbook.K_up = sine(1, 0.5, 2)\n");
    EXPECT_EQ(c.mc.seed, 7u);
    EXPECT_EQ(c.book.resilience_up, (CoefficientSpec{CoefficientSpec::Kind::Sine, 1.0, 0.5, 2.0}));
}

TEST(ParseConfig, PermanentImpactBound) {
    try {
        parse_config("book.alpha_up = 0.7\n");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("[0,1/2]"), std::string::npos) << e.what();
    }
}

TEST(ParseConfig, UnknownKey) {
    try {
        parse_config("seed = 1\nbook.colour = 3\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.key(), "book.colour");
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(ParseConfig, SchemaErrors) {
    EXPECT_THROW(parse_config("seed\n"), ParseError);
    EXPECT_THROW(parse_config("seed = 1\nseed = 2\n"), ParseError);
    EXPECT_THROW(parse_config("paths = -3\n"), ParseError);
    EXPECT_THROW(parse_config("kappa = abc\n"), ParseError);
    EXPECT_THROW(parse_config("experiment = nonsense\n"), ParseError);
    EXPECT_THROW(parse_config("book.h_up = cubic(1)\n"), ParseError);
}

TEST(ParseConfig, InvariantErrors) {
    EXPECT_THROW(parse_config("kappa_ladder = 16, 8, 32\n"), ValidationError);
    EXPECT_THROW(parse_config("horizon = 0\n"), ValidationError);
    EXPECT_THROW(parse_config("paths = 0\n"), ValidationError);
    EXPECT_THROW(parse_config("book.h_down = affine(1, -2)\n"), ValidationError);
    EXPECT_THROW(parse_config("strategy.kind = blocks\nstrategy.block_times = 0.5\n"), ValidationError);
    EXPECT_THROW(parse_config("experiment = utility\n"), ValidationError);
    EXPECT_THROW(parse_config("experiment = lemma-jump\n"), ValidationError);
}

TEST(ParseConfig, ShippedConfigsRoundTrip) {
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(LOBRES_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        ++count;
        const RunConfig c = parse_config(slurp(entry.path()));
        const std::string text = serialize(c);
        const RunConfig again = parse_config(text);
        EXPECT_EQ(again, c) << entry.path();
        EXPECT_EQ(serialize(again), text) << entry.path();
    }
    EXPECT_GE(count, 8u);
}

TEST(ParseConfig, RoundTripKeepsAwkwardDoubles) {
    RunConfig c;
    c.x0 = 0.1 + 0.2;
    c.kappa = 1.0 / 3.0;
    c.strategy.latest = 0.7;
    c.gates.max_slope = -1.25;
    EXPECT_EQ(parse_config(serialize(c)), c);
}

TEST(ConfigHash, DependsOnContent) {
    RunConfig a;
    RunConfig b;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b.mc.seed = 43;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Validate, Estimates) {
    RunConfig c = parse_config("experiment = theorem1\nstrategy.kind = sine\n");
    const RunEstimate ok = estimate_run(c);
    EXPECT_GT(ok.step_evaluations, 0.0);
    EXPECT_FALSE(ok.over_budget);
    c.budget = 100.0;
    EXPECT_TRUE(estimate_run(c).over_budget);
}

TEST(Run, ZeroStrategySimulationHasConstantWealth) {
    const fs::path dir = scratch("zero");
    const RunConfig c = parse_config("fundamental.sigma = 0.3\n");
    const RunOutcome out = run_experiment(c, dir);
    EXPECT_TRUE(out.passed());
    std::istringstream csv(slurp(dir / "wealth_ow.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "t,X,gain,spread_cost,impact_cost,block_cost,permanent_shift");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        const auto a = line.find(','), b = line.find(',', a + 1);
        EXPECT_EQ(line.substr(a + 1, b - a - 1), "1");
        ++rows;
    }
    EXPECT_EQ(rows, 513u);
    const std::string summary = slurp(dir / "summary.json");
    EXPECT_NE(summary.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(summary.find("\"seed\": 42"), std::string::npos);
    EXPECT_NE(summary.find(config_hash(c)), std::string::npos);
}

TEST(Run, Theorem1DefaultConfig) {
    const RunConfig c = parse_config(slurp(fs::path(LOBRES_CONFIG_DIR) / "theorem1.cfg"));
    EXPECT_EQ(c.ladder().values().front(), 16.0);
    EXPECT_EQ(c.ladder().max(), 4096.0);
    const fs::path dir = scratch("theorem1");
    const RunOutcome out = run_experiment(c, dir);
    ASSERT_EQ(out.gates.size(), 2u);
    EXPECT_NE(out.gates[1].name.find("slope"), std::string::npos);
    std::istringstream csv(slurp(dir / "convergence.csv"));
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header.rfind("kappa,mean_err,p95_err,kappa_x_err,slope_so_far", 0), 0u);
}

TEST(Run, RerunIsByteIdentical) {
    const RunConfig c = parse_config(slurp(fs::path(LOBRES_CONFIG_DIR) / "simulate.cfg"));
    const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
    const RunOutcome first = run_experiment(c, a);
    run_experiment(c, b);
    for (const std::string& f : first.files) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Run, GateFailureStillWritesArtifacts) {
    RunConfig c = parse_config(slurp(fs::path(LOBRES_CONFIG_DIR) / "theorem1.cfg"));
    c.gates.max_slope = -10.0;
    const fs::path dir = scratch("gatefail");
    const RunOutcome out = run_experiment(c, dir);
    EXPECT_FALSE(out.passed());
    EXPECT_TRUE(fs::exists(dir / "convergence.csv"));
    EXPECT_TRUE(fs::exists(dir / "summary.json"));
}

TEST(Run, UnwritableOutput) {
    const fs::path file = scratch("blocker");
    std::ofstream(file) << "x";
    EXPECT_THROW(run_experiment(RunConfig{}, file / "sub"), OutputError);
}
