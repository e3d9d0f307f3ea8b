#include "lobres/strategy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace lobres {

Strategy::Strategy(TimeGrid grid, std::vector<double> rate, std::vector<BlockTrade> blocks,
                   double initial_position)
    : grid_(grid),
      rate_(grid, std::move(rate)),
      blocks_(std::move(blocks)),
      block_at_(grid.size(), 0.0),
      initial_position_(initial_position) {
    if (!std::isfinite(initial_position_)) {
        throw std::invalid_argument("initial position must be finite");
    }
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const BlockTrade& b = blocks_[k];
        if (b.index >= grid_.size()) {
            throw std::invalid_argument("block index " + std::to_string(b.index) + " beyond grid");
        }
        if (k > 0 && b.index <= blocks_[k - 1].index) {
            throw std::invalid_argument(
                "block indices must be strictly increasing (one signed block per grid point)");
        }
        if (!std::isfinite(b.size)) {
            throw std::invalid_argument("block size must be finite");
        }
        block_at_[b.index] = b.size;
    }
}

Strategy Strategy::zero(const TimeGrid& grid, double initial_position) {
    return Strategy(grid, std::vector<double>(grid.size(), 0.0), {}, initial_position);
}

Strategy Strategy::from_rate(const SampledPath& rate, double initial_position) {
    const auto v = rate.values();
    return Strategy(rate.grid(), std::vector<double>(v.begin(), v.end()), {}, initial_position);
}

std::vector<double> Strategy::positions() const {
    std::vector<double> pos(grid_.size());
    const double dt = grid_.spacing();
    double phi = initial_position_;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        phi += block_at_[i];
        pos[i] = phi;
        if (i < grid_.steps()) {
            phi += rate_[i] * dt;
        }
    }
    return pos;
}

StrategyDiagnostics diagnostics(const Strategy& strategy) {
    StrategyDiagnostics d;
    const TimeGrid& g = strategy.grid();
    for (std::size_t i = 0; i < g.steps(); ++i) {
        const double r = std::abs(strategy.step_rate(i));
        d.total_variation += r * g.spacing();
        d.sup_rate = std::max(d.sup_rate, r);
    }
    for (const BlockTrade& b : strategy.blocks()) {
        d.total_variation += std::abs(b.size);
    }
    d.block_count = strategy.blocks().size();
    return d;
}

double net_volume(const Strategy& strategy) {
    const TimeGrid& g = strategy.grid();
    double v = 0.0;
    for (std::size_t i = 0; i < g.steps(); ++i) {
        v += strategy.step_rate(i) * g.spacing();
    }
    for (const BlockTrade& b : strategy.blocks()) {
        v += b.size;
    }
    return v;
}

void write_strategy_csv(std::ostream& out, const Strategy& strategy) {
    const TimeGrid& g = strategy.grid();
    out << "index,t,rate,block\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", i, g.time(i), strategy.step_rate(i),
                           strategy.block_at(i));
    }
}

}  // namespace lobres
