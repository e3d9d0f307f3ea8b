#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobres/order_book.hpp"
#include "lobres/paths.hpp"
#include "lobres/strategies.hpp"
#include "lobres/strategy.hpp"

namespace lobres {

// Deterministic coefficient t -> value. Text forms:
//   "<a>"               constant a
//   "affine(a, b)"      a + b t
//   "sine(a, b, f)"     a + b sin(2 pi f t)
//   "exp(a, b)"         a exp(b t)
struct CoefficientSpec {
    enum class Kind { Constant, Affine, Sine, Exponential };

    Kind kind = Kind::Constant;
    double a = 0.0;
    double b = 0.0;
    double f = 0.0;

    static CoefficientSpec constant(double value) { return {Kind::Constant, value, 0.0, 0.0}; }
    static CoefficientSpec parse(const std::string& text);

    double operator()(double t) const;
    std::string to_string() const;
    SampledPath sample(const TimeGrid& grid) const;

    friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

struct BookTemplate {
    CoefficientSpec resilience_up = CoefficientSpec::constant(1.0);
    CoefficientSpec resilience_down = CoefficientSpec::constant(1.0);
    CoefficientSpec depth_up = CoefficientSpec::constant(1.0);
    CoefficientSpec depth_down = CoefficientSpec::constant(1.0);
    CoefficientSpec permanent_up = CoefficientSpec::constant(0.0);
    CoefficientSpec permanent_down = CoefficientSpec::constant(0.0);
    CoefficientSpec spread_up = CoefficientSpec::constant(0.0);
    CoefficientSpec spread_down = CoefficientSpec::constant(0.0);

    BookParams instantiate(const TimeGrid& grid, double kappa) const;

    friend bool operator==(const BookTemplate&, const BookTemplate&) = default;
};

// Bachelier fundamental dS = mu dt + sigma dW.
struct FundamentalSpec {
    double initial = 1.0;
    double drift = 0.0;
    double volatility = 0.0;

    SampledPath from_brownian(const SampledPath& brownian) const;
    bool deterministic() const { return volatility == 0.0; }

    friend bool operator==(const FundamentalSpec&, const FundamentalSpec&) = default;
};

// Strategy recipe evaluated on a concrete grid and fundamental path.
// Rate kinds give rate_i = scale * clip(base(t_i) + feedback (S_i - S_0)),
// clipped to +-rate_bound when rate_bound > 0.
struct StrategySpec {
    enum class Kind { Zero, Constant, Sine, Cosine, Blocks };

    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    double frequency = 1.0;
    double phase = 0.0;
    double feedback = 0.0;
    double rate_bound = 0.0;
    std::vector<double> block_times;
    std::vector<double> block_sizes;
    std::optional<double> latest;  // last admissible block time T'

    Strategy build(const TimeGrid& grid, const SampledPath& fundamental, double scale = 1.0) const;
    double base_rate(double t) const;

    friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

// Step count for a given kappa: the smallest N0 * 2^k with N0 * 2^k >= c sqrt(kappa).
// Grids for different kappa are therefore nested.
struct GridRule {
    double horizon = 1.0;
    std::size_t base_steps = 512;
    double scale = 8.0;

    std::size_t steps_for(double kappa) const;
    TimeGrid grid_for(double kappa) const { return TimeGrid(horizon, steps_for(kappa)); }

    friend bool operator==(const GridRule&, const GridRule&) = default;
};

struct MonteCarlo {
    std::size_t paths = 1;
    std::uint64_t seed = 42;

    friend bool operator==(const MonteCarlo&, const MonteCarlo&) = default;
};

}  // namespace lobres
