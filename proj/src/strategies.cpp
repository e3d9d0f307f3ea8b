#include "lobres/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lobres {

namespace {

Strategy strategy_from_positions(const TimeGrid& grid, const std::vector<double>& pos) {
    const double dt = grid.spacing();
    std::vector<double> rate(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.steps(); ++i) {
        rate[i] = (pos[i + 1] - pos[i]) / dt;
    }
    rate[grid.steps()] = rate[grid.steps() - 1];
    return Strategy(grid, std::move(rate), {}, pos.front());
}

}  // namespace

Strategy block_schedule(const TimeGrid& grid, const std::vector<TimedTrade>& trades,
                        std::optional<double> latest) {
    if (latest && *latest >= grid.horizon()) {
        throw std::invalid_argument("latest block time must be strictly before T");
    }
    std::vector<BlockTrade> blocks;
    blocks.reserve(trades.size());
    for (std::size_t k = 0; k < trades.size(); ++k) {
        const TimedTrade& tr = trades[k];
        if (tr.time < 0.0) {
            throw std::invalid_argument("block time must be nonnegative");
        }
        if (latest ? tr.time > *latest : tr.time >= grid.horizon()) {
            throw std::invalid_argument("block time " + std::to_string(tr.time) +
                                        " past the last admissible trading time");
        }
        if (k > 0 && tr.time <= trades[k - 1].time) {
            throw std::invalid_argument("block times must be strictly increasing");
        }
        if (tr.size == 0.0 || !std::isfinite(tr.size)) {
            throw std::invalid_argument("block sizes must be nonzero and finite");
        }
        const std::size_t idx = grid.nearest_index(tr.time);
        if (!blocks.empty() && blocks.back().index == idx) {
            throw std::invalid_argument("two blocks round to grid index " + std::to_string(idx));
        }
        blocks.push_back({idx, tr.size});
    }
    return Strategy(grid, std::vector<double>(grid.size(), 0.0), std::move(blocks));
}

Strategy smooth_blocks(const Strategy& blocks, double kappa, double window_factor) {
    if (!(kappa > 0.0) || !(window_factor > 0.0)) {
        throw std::invalid_argument("smoothing needs kappa > 0 and a positive window factor");
    }
    const TimeGrid& g = blocks.grid();
    for (std::size_t i = 0; i < g.steps(); ++i) {
        if (blocks.step_rate(i) != 0.0) {
            throw std::invalid_argument("smooth_blocks expects a pure block strategy");
        }
    }
    const double dt = g.spacing();
    const double width = window_factor * std::pow(kappa, -0.25);
    double whole = std::floor(width / dt);
    double frac = width / dt - whole;
    if (frac > 1.0 - 1e-9) {
        whole += 1.0;
        frac = 0.0;
    }
    const auto full_steps = static_cast<std::size_t>(whole);
    const std::size_t steps = full_steps + (frac > 1e-9 ? 1 : 0);
    const std::size_t window_steps = std::max<std::size_t>(steps, 1);

    std::vector<double> rate(g.size(), 0.0);
    const auto& list = blocks.blocks();
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::size_t start = list[k].index;
        const std::size_t end = start + window_steps;
        const std::size_t limit = k + 1 < list.size() ? list[k + 1].index : g.steps();
        if (end > limit) {
            throw std::invalid_argument("smoothing window of block " + std::to_string(k) +
                                        (k + 1 < list.size() ? " overlaps the next block"
                                                             : " runs past T"));
        }
        const double theta = list[k].size;
        const double r = theta / width;
        for (std::size_t i = start; i + 1 < end; ++i) {
            rate[i] = r;
        }
        rate[end - 1] = (theta - r * static_cast<double>(window_steps - 1) * dt) / dt;
    }
    return Strategy(g, std::move(rate), {}, blocks.initial_position());
}

std::vector<double> tracker_positions(const SampledPath& target, const SampledPath& speed,
                                      double kappa, double initial_position) {
    const TimeGrid& g = target.grid();
    if (!(g == speed.grid())) {
        throw std::invalid_argument("tracker target and speed live on different grids");
    }
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("tracker needs kappa > 0");
    }
    const double root = std::sqrt(kappa);
    const double dt = g.spacing();
    std::vector<double> x(g.size());
    x[0] = initial_position;
    for (std::size_t i = 0; i < g.steps(); ++i) {
        if (!(speed[i] >= 0.0)) {
            throw std::invalid_argument("tracker speed must be nonnegative");
        }
        const double q = std::exp(-root * speed[i] * dt);
        x[i + 1] = target[i] + q * (x[i] - target[i]);
    }
    return x;
}

Strategy exponential_tracker(const TrackerSpec& spec, std::optional<double> initial_position) {
    for (std::size_t i = 0; i < spec.speed.size(); ++i) {
        if (!(spec.speed[i] > 0.0)) {
            throw std::invalid_argument("tracker rate M must be positive (index " +
                                        std::to_string(i) + ")");
        }
    }
    const auto pos = tracker_positions(spec.target, spec.speed, spec.kappa,
                                       initial_position.value_or(spec.target.front()));
    return strategy_from_positions(spec.target.grid(), pos);
}

SampledPath tracker_speed(const BookParams& book, const SampledPath& volatility,
                          const SampledPath& risk_tolerance) {
    const TimeGrid& g = book.grid();
    if (!(g == volatility.grid()) || !(g == risk_tolerance.grid())) {
        throw std::invalid_argument("grid mismatch: tracker speed inputs");
    }
    if (!book.symmetric()) {
        throw std::invalid_argument("optimal tracker requires a symmetric book");
    }
    std::vector<double> m(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(risk_tolerance[i] > 0.0)) {
            throw std::invalid_argument("risk tolerance must be positive");
        }
        if (!(volatility[i] >= 0.0)) {
            throw std::invalid_argument("volatility must be nonnegative");
        }
        const double k = book.resilience(Side::Ask, i);
        const double h = book.depth(Side::Ask, i);
        m[i] = std::sqrt(k * h * volatility[i] * volatility[i] / (2.0 * risk_tolerance[i]));
    }
    return SampledPath(g, std::move(m));
}

Strategy optimal_tracker(const BookParams& book, const SampledPath& volatility,
                         const SampledPath& risk_tolerance, const SampledPath& target,
                         std::optional<double> initial_position, double speed_multiplier) {
    if (!(target.grid() == book.grid())) {
        throw std::invalid_argument("grid mismatch: tracker target vs book");
    }
    if (!(speed_multiplier > 0.0)) {
        throw std::invalid_argument("speed multiplier must be positive");
    }
    SampledPath m = tracker_speed(book, volatility, risk_tolerance);
    for (double& v : m.mutable_values()) {
        v *= speed_multiplier;
    }
    const auto pos = tracker_positions(target, m, book.kappa(),
                                       initial_position.value_or(target.front()));
    return strategy_from_positions(book.grid(), pos);
}

}  // namespace lobres
