#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "lobres/asymptotics.hpp"

using namespace lobres;

namespace {

ExperimentSetup small_setup() {
    ExperimentSetup s;
    s.grid.base_steps = 128;
    s.book.permanent_up = s.book.permanent_down = CoefficientSpec::constant(0.25);
    s.book.spread_up = s.book.spread_down = CoefficientSpec::constant(0.01);
    s.strategy.kind = StrategySpec::Kind::Sine;
    s.ladder = KappaLadder::geometric(16.0, 5, 4.0);
    return s;
}

}  // namespace

TEST(FitRate, ExactPowerLaw) {
    std::vector<std::pair<double, double>> pts;
    for (double k = 16.0; k <= 4096.0; k *= 2.0) pts.push_back({k, std::pow(k, -2.0)});
    const RateFit f = fit_rate(pts);
    EXPECT_NEAR(f.slope, -2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 0.0, 1e-11);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(FitRate, ConstantErrors) {
    EXPECT_NEAR(fit_rate({{1.0, 3.0}, {2.0, 3.0}, {8.0, 3.0}}).slope, 0.0, 1e-15);
}

TEST(FitRate, InsufficientData) {
    EXPECT_THROW(fit_rate({{1.0, 1.0}, {2.0, 0.5}}), InsufficientData);
    EXPECT_THROW(fit_rate({{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.0}}), InsufficientData);
}

TEST(KappaLadder, Validation) {
    EXPECT_THROW(KappaLadder({16.0, 8.0}), std::invalid_argument);
    EXPECT_THROW(KappaLadder({16.0, 16.0}), std::invalid_argument);
    EXPECT_THROW(KappaLadder({0.0, 8.0}), std::invalid_argument);
    EXPECT_THROW(KappaLadder({}), std::invalid_argument);
    const KappaLadder l = KappaLadder::geometric(16.0, 9);
    EXPECT_EQ(l.size(), 9u);
    EXPECT_EQ(l.max(), 4096.0);
}

TEST(GridRule, NestedAndResolving) {
    const GridRule r;
    EXPECT_EQ(r.steps_for(16.0), 512u);
    EXPECT_EQ(r.steps_for(4096.0), 512u);
    EXPECT_EQ(r.steps_for(16384.0), 1024u);
    EXPECT_EQ(r.steps_for(1e6), 8192u);
    for (double k = 1.0; k < 1e8; k *= 3.0) EXPECT_GE(double(r.steps_for(k)), 8.0 * std::sqrt(k));
}

TEST(CommonFundamental, SameNoiseAcrossKappa) {
    ExperimentSetup s = small_setup();
    s.grid.base_steps = 16;
    s.grid.scale = 8.0;
    s.fundamental.volatility = 0.3;
    s.ladder = KappaLadder({16.0, 1024.0, 65536.0});
    const SampledPath coarse = common_fundamental(s, 3, 16.0);
    const SampledPath fine = common_fundamental(s, 3, 65536.0);
    ASSERT_EQ(fine.grid().steps() % coarse.grid().steps(), 0u);
    const std::size_t r = fine.grid().steps() / coarse.grid().steps();
    for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(coarse[i], fine[r * i], 1e-12);
}

TEST(Theorem1, ZeroStrategyHasZeroError) {
    ExperimentSetup s = small_setup();
    s.strategy.kind = StrategySpec::Kind::Zero;
    const ConvergenceReport r = theorem1_experiment(s);
    for (const ConvergenceRow& row : r.rows) EXPECT_EQ(row.mean_err, 0.0);
    EXPECT_FALSE(r.fit.has_value());
    EXPECT_EQ(r.zero_error_points, s.ladder.size());
    EXPECT_FALSE(all_passed(convergence_gates(r, 1.0, true, -1.5)));
}

TEST(Theorem1, BlocksRejected) {
    ExperimentSetup s = small_setup();
    s.strategy.kind = StrategySpec::Kind::Blocks;
    s.strategy.block_times = {0.5};
    s.strategy.block_sizes = {1.0};
    EXPECT_THROW(theorem1_experiment(s), std::invalid_argument);
}

TEST(Theorem1, SmallLadderConverges) {
    const ConvergenceReport r = theorem1_experiment(small_setup());
    ASSERT_TRUE(r.fit.has_value());
    EXPECT_LE(r.fit->slope, -1.5);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        EXPECT_LT(r.rows[i].kappa_x_err, r.rows[i - 1].kappa_x_err);
    }
}

TEST(Remark1, ZeroAndCosine) {
    ExperimentSetup s = small_setup();
    s.strategy.kind = StrategySpec::Kind::Zero;
    for (const ConvergenceRow& row : remark1_experiment(s).rows) EXPECT_EQ(row.mean_err, 0.0);

    s.strategy.kind = StrategySpec::Kind::Cosine;
    const ConvergenceReport r = remark1_experiment(s);
    const auto gates = convergence_gates(r, 0.5, false, -0.9);
    EXPECT_TRUE(all_passed(gates)) << gates[0].detail << " / " << gates[1].detail;
}

TEST(L2Convergence, ZeroStrategyAndJensen) {
    ExperimentSetup s = small_setup();
    s.strategy.kind = StrategySpec::Kind::Zero;
    s.fundamental.volatility = 0.2;
    s.mc.paths = 8;
    for (const ConvergenceRow& row : l2_convergence_experiment(s, {}).rows) EXPECT_EQ(row.l2_err, 0.0);

    s.strategy.kind = StrategySpec::Kind::Sine;
    s.strategy.feedback = 2.0;
    const ConvergenceReport r = l2_convergence_experiment(s, {});
    EXPECT_EQ(r.metric, "l2");
    for (const ConvergenceRow& row : r.rows) EXPECT_GE(row.l2_err, row.mean_err);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        EXPECT_LT(r.rows[i].kappa_x_err, r.rows[i - 1].kappa_x_err);
    }
}

TEST(L2Convergence, BoundViolation) {
    ExperimentSetup s = small_setup();
    s.strategy.amplitude = 20.0;
    EXPECT_THROW(l2_convergence_experiment(s, {10.0, 1e-3}), std::invalid_argument);
    s.strategy.amplitude = 1.0;
    EXPECT_THROW(l2_convergence_experiment(s, {10.0, 2.0}), std::invalid_argument);
}

TEST(Lemma, ZeroStrategyRejected) {
    ExperimentSetup s = small_setup();
    s.strategy.kind = StrategySpec::Kind::Blocks;
    EXPECT_THROW(lemma_jump_experiment(s, 1.0), std::invalid_argument);
}

TEST(Lemma, MaximalPermanentImpactLimit) {
    ExperimentSetup s;
    s.book.permanent_up = s.book.permanent_down = CoefficientSpec::constant(0.5);
    s.strategy.kind = StrategySpec::Kind::Blocks;
    s.strategy.block_times = {0.3};
    s.strategy.block_sizes = {1.0};
    s.ladder = KappaLadder::geometric(64.0, 7);
    const LemmaReport r = lemma_jump_experiment(s, 1.0);
    // Block pays (1/2 - 1/2) theta^2/h = 0; the smoothed path earns its own
    // permanent impact, (alpha/h) theta^2 / 2 = 1/4.
    EXPECT_NEAR(r.limit, 0.25, 1e-15);
    EXPECT_NEAR(r.rows.back().mean_diff, 0.25, 0.02);
    EXPECT_EQ(r.rows.back().positive_fraction, 1.0);
}

TEST(TrackerBound, ConstantTargetIsZero) {
    TrackerBoundSetup s;
    s.volatility = 0.0;
    s.mc.paths = 4;
    s.ladder = KappaLadder({16.0, 64.0, 256.0});
    const TrackerBoundReport r = tracker_bound_experiment(s);
    for (const TrackerBoundRow& row : r.rows) EXPECT_EQ(row.estimate, 0.0);
    EXPECT_TRUE(all_passed(tracker_bound_gates(r)));
}

TEST(TrackerBound, DeclaredBounds) {
    TrackerBoundSetup s;
    s.mc.paths = 4;
    s.volatility = 2.0;
    EXPECT_THROW(tracker_bound_experiment(s), std::invalid_argument);
    s.volatility = 1.0;
    s.speed = 0.5;
    EXPECT_THROW(tracker_bound_experiment(s), std::invalid_argument);
}

TEST(CertaintyEquivalent, KnownValues) {
    const CertaintyEquivalent c = certainty_equivalent(std::vector<double>(50, 1.25), 2.0, 50, 1);
    EXPECT_NEAR(c.value, 1.25, 1e-15);
    EXPECT_NEAR(c.half_width(), 0.0, 1e-15);

    std::vector<double> w(20000);
    for (std::size_t i = 0; i < w.size(); ++i) {
        RandomSource rng(6, i);
        w[i] = 1.0 + 0.5 * rng.normal();
    }
    // Gaussian wealth: CE = mean - gamma var / 2.
    const CertaintyEquivalent g = certainty_equivalent(w, 1.0, 100, 1);
    EXPECT_NEAR(g.value, 1.0 - 0.125, 0.015);
    EXPECT_LT(g.ci_low, g.value);
    EXPECT_GT(g.ci_high, g.value);
}

TEST(Utility, Preconditions) {
    UtilitySetup u;
    u.base.fundamental.drift = 0.1;
    u.base.fundamental.volatility = 0.0;
    u.base.mc.paths = 4;
    EXPECT_THROW(utility_experiment(u), std::invalid_argument);
    u.base.fundamental.volatility = 0.2;
    u.base.book.spread_up = u.base.book.spread_down = CoefficientSpec::constant(0.01);
    EXPECT_THROW(utility_experiment(u), std::invalid_argument);
    u.base.book.spread_up = u.base.book.spread_down = CoefficientSpec::constant(0.0);
    u.base.book.depth_up = CoefficientSpec::constant(2.0);
    EXPECT_THROW(utility_experiment(u), std::invalid_argument);
    u.base.book.depth_up = CoefficientSpec::constant(1.0);
    u.multipliers = {0.5, 2.0};
    EXPECT_THROW(utility_experiment(u), std::invalid_argument);
}

TEST(Utility, SmallRunShape) {
    UtilitySetup u;
    u.base.fundamental.drift = 0.1;
    u.base.fundamental.volatility = 0.2;
    u.base.mc.paths = 200;
    u.base.ladder = KappaLadder({64.0, 256.0, 1024.0});
    u.bootstrap_resamples = 20;
    const UtilityReport r = utility_experiment(u);
    EXPECT_EQ(r.comparison.size(), 3u);
    EXPECT_EQ(r.ladder.size(), 3u);
    EXPECT_NEAR(r.frictionless, 1.0 + 0.01 / (2.0 * 0.04), 1e-15);
    EXPECT_EQ(r.ladder[1].ow.value, r.comparison[1].ow.value);
    std::ostringstream out;
    write_utility_csv(out, r);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
              "section,kappa,multiplier,ce_ow,ci_low,ci_high,ce_ac,ce_frictionless");
}

TEST(Reports, ConvergenceCsvHeader) {
    std::ostringstream out;
    write_convergence_csv(out, theorem1_experiment(small_setup()));
    EXPECT_EQ(out.str().rfind("kappa,mean_err,p95_err,kappa_x_err,slope_so_far", 0), 0u);
}
