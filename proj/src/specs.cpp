#include "lobres/specs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace lobres {

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number: '" + t + "'");
    }
    return v;
}

std::vector<double> parse_args(const std::string& inner) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = inner.find(',', start);
        out.push_back(parse_number(inner.substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

CoefficientSpec CoefficientSpec::parse(const std::string& text) {
    const std::string t = trim(text);
    const std::size_t open = t.find('(');
    if (open == std::string::npos) {
        return constant(parse_number(t));
    }
    if (t.back() != ')') {
        throw std::invalid_argument("unterminated coefficient spec '" + t + "'");
    }
    const std::string name = trim(t.substr(0, open));
    const auto args = parse_args(t.substr(open + 1, t.size() - open - 2));
    auto want = [&](std::size_t n) {
        if (args.size() != n) {
            throw std::invalid_argument(name + "() takes " + std::to_string(n) + " arguments");
        }
    };
    if (name == "affine") {
        want(2);
        return {Kind::Affine, args[0], args[1], 0.0};
    }
    if (name == "sine") {
        want(3);
        return {Kind::Sine, args[0], args[1], args[2]};
    }
    if (name == "exp") {
        want(2);
        return {Kind::Exponential, args[0], args[1], 0.0};
    }
    throw std::invalid_argument("unknown coefficient function '" + name + "'");
}

double CoefficientSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Constant: return a;
        case Kind::Affine: return a + b * t;
        case Kind::Sine: return a + b * std::sin(2.0 * std::numbers::pi * f * t);
        case Kind::Exponential: return a * std::exp(b * t);
    }
    return a;
}

std::string CoefficientSpec::to_string() const {
    switch (kind) {
        case Kind::Constant: return fmt::format("{:.17g}", a);
        case Kind::Affine: return fmt::format("affine({:.17g}, {:.17g})", a, b);
        case Kind::Sine: return fmt::format("sine({:.17g}, {:.17g}, {:.17g})", a, b, f);
        case Kind::Exponential: return fmt::format("exp({:.17g}, {:.17g})", a, b);
    }
    return {};
}

SampledPath CoefficientSpec::sample(const TimeGrid& grid) const {
    if (kind == Kind::Constant) {
        return constant_path(grid, a);
    }
    return function_path(grid, [this](double t) { return (*this)(t); });
}

BookParams BookTemplate::instantiate(const TimeGrid& grid, double kappa) const {
    return BookParams(kappa, BookCoefficients{resilience_up.sample(grid), resilience_down.sample(grid),
                                              depth_up.sample(grid), depth_down.sample(grid),
                                              permanent_up.sample(grid), permanent_down.sample(grid),
                                              spread_up.sample(grid), spread_down.sample(grid)});
}

SampledPath FundamentalSpec::from_brownian(const SampledPath& brownian) const {
    if (volatility == 0.0 && drift == 0.0) {
        return constant_path(brownian.grid(), initial);
    }
    const double mu = drift;
    const double sigma = volatility;
    return ito_from_brownian(
        brownian, [mu](double, double) { return mu; }, [sigma](double, double) { return sigma; },
        initial);
}

double StrategySpec::base_rate(double t) const {
    switch (kind) {
        case Kind::Zero:
        case Kind::Blocks: return 0.0;
        case Kind::Constant: return amplitude;
        case Kind::Sine:
            return amplitude * std::sin(2.0 * std::numbers::pi * frequency * t + phase);
        case Kind::Cosine:
            return amplitude * std::cos(2.0 * std::numbers::pi * frequency * t + phase);
    }
    return 0.0;
}

Strategy StrategySpec::build(const TimeGrid& grid, const SampledPath& fundamental,
                             double scale) const {
    if (kind == Kind::Blocks) {
        if (block_times.size() != block_sizes.size()) {
            throw std::invalid_argument("block times and sizes differ in length");
        }
        std::vector<TimedTrade> trades;
        for (std::size_t k = 0; k < block_times.size(); ++k) {
            trades.push_back({block_times[k], block_sizes[k]});
        }
        return block_schedule(grid, trades, latest);
    }
    if (kind == Kind::Zero) {
        return Strategy::zero(grid);
    }
    if (!(fundamental.grid() == grid)) {
        throw std::invalid_argument("grid mismatch: strategy vs fundamental");
    }
    std::vector<double> rate(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = base_rate(grid.time(i)) + feedback * (fundamental[i] - fundamental.front());
        if (rate_bound > 0.0) {
            r = std::clamp(r, -rate_bound, rate_bound);
        }
        rate[i] = scale * r;
    }
    return Strategy(grid, std::move(rate), {});
}

std::size_t GridRule::steps_for(double kappa) const {
    const double needed = scale * std::sqrt(kappa);
    std::size_t n = base_steps;
    while (static_cast<double>(n) < needed) {
        n *= 2;
    }
    return n;
}

}  // namespace lobres
