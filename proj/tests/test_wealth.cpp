#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "lobres/asymptotics.hpp"
#include "lobres/wealth.hpp"

using namespace lobres;

namespace {

Strategy single_block(const TimeGrid& g, std::size_t index, double theta) {
    return Strategy(g, std::vector<double>(g.size(), 0.0), {{index, theta}});
}

Strategy random_strategy(const TimeGrid& g, RandomSource& rng) {
    std::vector<double> rate(g.size());
    const double amp = 5.0 * rng.uniform();
    const double freq = 1.0 + 4.0 * rng.uniform();
    for (std::size_t i = 0; i < g.size(); ++i) {
        rate[i] = amp * std::sin(freq * g.time(i)) + rng.normal();
    }
    std::vector<BlockTrade> blocks;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (rng.uniform() < 0.03) blocks.push_back({i, 2.0 * rng.normal()});
    }
    return Strategy(g, rate, blocks, rng.normal());
}

}  // namespace

TEST(OwWealth, ZeroStrategyKeepsInitialWealth) {
    const TimeGrid g = make_grid(1.0, 40);
    RandomSource rng(1, 0);
    const SampledPath s = sample_ito(g, [](double, double) { return 0.0; },
                                     [](double, double) { return 0.2; }, 1.0, rng);
    const WealthPath w = ow_wealth(constant_book(g, 50.0, 1.0, 1.0, 0.2, 0.01), Strategy::zero(g), s, 3.0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(w.wealth[i], 3.0);
}

TEST(OwWealth, SingleBlockCost) {
    const TimeGrid g = make_grid(1.0, 10);
    const double e = 0.05, h = 2.0, theta = 1.5;
    const BookParams book = constant_book(g, 30.0, 1.0, h, 0.0, e);
    const WealthPath w = ow_wealth(book, single_block(g, 4, theta), constant_path(g, 7.0), 0.0);
    EXPECT_NEAR(w.terminal(), -e * theta - theta * theta / (2.0 * h), 1e-14);
    EXPECT_NEAR(w.spread_cost.back(), e * theta, 1e-15);
    EXPECT_NEAR(w.block_cost.back(), theta * theta / (2.0 * h), 1e-15);
}

TEST(OwWealth, RoundTripAfterDecay) {
    const TimeGrid g = make_grid(1.0, 100);
    const double e = 0.01, h = 1.0, theta = 2.0;
    const BookParams book = constant_book(g, 1e4, 1.0, h, 0.0, e);
    const Strategy st(g, std::vector<double>(g.size(), 0.0), {{0, theta}, {100, -theta}});
    const WealthPath w = ow_wealth(book, st, constant_path(g, 5.0), 1.0);
    EXPECT_NEAR(w.terminal() - 1.0, -2.0 * e * theta - theta * theta / h, 1e-12);
}

TEST(OwWealth, BreakdownIdentity) {
    const TimeGrid g = make_grid(1.0, 300);
    RandomSource rng(5, 5);
    const SampledPath s = sample_ito(g, [](double, double) { return 0.1; },
                                     [](double, double) { return 0.3; }, 2.0, rng);
    const WealthPath w = ow_wealth(constant_book(g, 40.0, 1.0, 1.5, 0.3, 0.02),
                                   random_strategy(g, rng), s, 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(w.wealth[i], 1.0 + w.gain[i] - w.spread_cost[i] - w.impact_cost[i] - w.block_cost[i],
                    1e-12);
    }
}

TEST(OwWealth, GridMismatch) {
    const TimeGrid g = make_grid(1.0, 10);
    EXPECT_THROW(ow_wealth(constant_book(g, 1.0, 1.0, 1.0, 0.0, 0.0), Strategy::zero(make_grid(1.0, 11)),
                           constant_path(g, 1.0), 0.0),
                 std::invalid_argument);
}

TEST(SafeAccount, ZeroStrategyIsConstant) {
    const TimeGrid g = make_grid(1.0, 20);
    RandomSource rng(2, 0);
    const SampledPath s = sample_ito(g, [](double, double) { return 0.0; },
                                     [](double, double) { return 1.0; }, 4.0, rng);
    const SafeAccountPath a =
        safe_account(constant_book(g, 10.0, 1.0, 1.0, 0.0, 0.0), Strategy::zero(g, 2.0), s, 10.0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a.cash[i], 10.0 - 2.0 * 4.0);
}

TEST(SafeAccount, SingleBlockPayment) {
    const TimeGrid g = make_grid(1.0, 10);
    const double s0 = 3.0, e = 0.02, h = 4.0, theta = 2.0;
    const SafeAccountPath a = safe_account(constant_book(g, 10.0, 1.0, h, 0.0, e),
                                           single_block(g, 3, theta), constant_path(g, s0), 0.0);
    EXPECT_NEAR(a.cash[3] - a.cash[2], -(s0 + e + theta / (2.0 * h)) * theta, 1e-14);
}

TEST(SafeAccount, IdentityOnRandomStrategies) {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        RandomSource rng(31, trial);
        const TimeGrid g = make_grid(1.0 + rng.uniform(), 50 + trial);
        const SampledPath s = sample_ito(g, [](double, double) { return 0.05; },
                                         [](double, double) { return 0.4; }, 10.0, rng);
        const SampledPath k = function_path(g, [](double t) { return 1.0 + 0.5 * std::sin(3.0 * t); });
        const SampledPath h = function_path(g, [](double t) { return 1.0 + t; });
        const SampledPath a = constant_path(g, 0.5 * rng.uniform());
        const SampledPath e = function_path(g, [](double t) { return 0.01 + 0.01 * t; });
        const BookParams book(10.0 + 100.0 * rng.uniform(),
                              BookCoefficients{k, constant_path(g, 2.0), h, constant_path(g, 0.7), a,
                                               constant_path(g, 0.1), e, constant_path(g, 0.03)});
        const Strategy st = random_strategy(g, rng);
        const WealthPath w = ow_wealth(book, st, s, 1.0);
        const SafeAccountPath acc = safe_account(book, st, s, 1.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double marked = acc.marked_wealth(i);
            EXPECT_LE(std::abs(w.wealth[i] - marked), 1e-10 * std::max(1.0, std::abs(marked)))
                << "trial " << trial << " i " << i;
        }
    }
}

TEST(AcWealth, ConstantRateClosedForm) {
    const TimeGrid g = make_grid(2.0, 64);
    const double e = 0.03, c = 1.5, kappa = 20.0, K = 2.0, h = 0.5;
    const BookParams book = constant_book(g, kappa, K, h, 0.0, e);
    const WealthPath w =
        ac_wealth(book, Strategy(g, std::vector<double>(g.size(), c), {}), constant_path(g, 4.0), 1.0);
    EXPECT_NEAR(w.terminal() - 1.0, -e * c * 2.0 - c * c * 2.0 / (kappa * K * h), 1e-13);
}

TEST(AcWealth, QuadraticCostScalesInverselyWithKappaKh) {
    const TimeGrid g = make_grid(1.0, 64);
    std::vector<double> rate(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rate[i] = std::cos(4.0 * g.time(i));
    const Strategy st(g, rate, {});
    const SampledPath s = constant_path(g, 1.0);
    const double base = ac_wealth(constant_book(g, 10.0, 1.0, 1.0, 0.0, 0.0), st, s, 0.0).impact_cost.back();
    EXPECT_NEAR(ac_wealth(constant_book(g, 20.0, 1.0, 1.0, 0.0, 0.0), st, s, 0.0).impact_cost.back(),
                base / 2.0, 1e-15);
    EXPECT_NEAR(ac_wealth(constant_book(g, 10.0, 3.0, 2.0, 0.0, 0.0), st, s, 0.0).terminal(),
                -base / 6.0, 1e-15);
}

TEST(AcWealth, Preconditions) {
    const TimeGrid g = make_grid(1.0, 10);
    const BookParams book = constant_book(g, 10.0, 1.0, 1.0, 0.0, 0.0);
    EXPECT_THROW(ac_wealth(book, single_block(g, 2, 1.0), constant_path(g, 1.0), 0.0),
                 std::invalid_argument);
    const WealthPath z = ac_wealth(book, Strategy::zero(g), constant_path(g, 1.0), 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(z.wealth[i], 2.0);
}

TEST(Wealth, NoFreeLunchAtConstantPrice) {
    const TimeGrid g = make_grid(1.0, 200);
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
        RandomSource rng(13, trial);
        const BookParams book = constant_book(g, 5.0 + 200.0 * rng.uniform(), 1.0, 1.0, 0.0, 0.01);
        const WealthPath w = ow_wealth(book, random_strategy(g, rng), constant_path(g, 3.0), 1.0);
        EXPECT_LE(w.terminal(), 1.0);
    }
}

TEST(Wealth, PermanentImpactMarkUp) {
    const TimeGrid g = make_grid(1.0, 20);
    const double theta = 1.2, h = 1.5, alpha = 0.3;
    const SampledPath s = constant_path(g, 2.0);
    const WealthPath with = ow_wealth(constant_book(g, 10.0, 1.0, h, alpha, 0.0), single_block(g, 5, theta), s, 0.0);
    const WealthPath without = ow_wealth(constant_book(g, 10.0, 1.0, h, 0.0, 0.0), single_block(g, 5, theta), s, 0.0);
    // Position after the trade times alpha/h times the traded volume.
    EXPECT_NEAR(with.wealth[5] - without.wealth[5], theta * (alpha / h) * theta, 1e-14);
}

TEST(Wealth, RefinementOrder) {
    auto terminal = [](std::size_t n) {
        const TimeGrid g = make_grid(1.0, n);
        const SampledPath k = function_path(g, [](double t) { return 1.0 + 0.5 * std::sin(5.0 * t); });
        const SampledPath one = constant_path(g, 1.0);
        const BookParams book(8.0, BookCoefficients{k, k, one, one, constant_path(g, 0.2),
                                                    constant_path(g, 0.2), constant_path(g, 0.01),
                                                    constant_path(g, 0.01)});
        std::vector<double> rate(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) rate[i] = std::sin(2.0 * M_PI * g.time(i));
        const SampledPath s = function_path(g, [](double t) { return 1.0 + 0.3 * t * t; });
        return ow_wealth(book, Strategy(g, rate, {}), s, 1.0).terminal();
    };
    std::vector<std::pair<double, double>> pts;
    double prev = terminal(64);
    for (std::size_t n = 128; n <= 2048; n *= 2) {
        const double cur = terminal(n);
        pts.push_back({1.0 / n, std::abs(cur - prev)});
        prev = cur;
    }
    EXPECT_GE(fit_rate(pts).slope, 0.9);
}

TEST(Wealth, CsvHeader) {
    const TimeGrid g = make_grid(1.0, 2);
    std::ostringstream out;
    write_wealth_csv(out, ac_wealth(constant_book(g, 1.0, 1.0, 1.0, 0.0, 0.0), Strategy::zero(g),
                                    constant_path(g, 1.0), 1.0));
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
              "t,X,gain,spread_cost,impact_cost,block_cost,permanent_shift");
}
