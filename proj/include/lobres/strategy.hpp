#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "lobres/paths.hpp"

namespace lobres {

struct BlockTrade {
    std::size_t index;  // grid point of execution
    double size;        // signed shares; > 0 buys

    friend bool operator==(const BlockTrade&, const BlockTrade&) = default;
};

// Finite-variation trading plan on a grid: a signed turnover rate that is
// constant on each step [t_i, t_{i+1}) plus signed block trades at grid
// points. Buy and sell parts are derived by sign, which gives the minimal
// decomposition phi = phi_up - phi_down at the discrete level.
//
// The rate entry at the last grid point is carried along for output only;
// no trading happens after T.
class Strategy {
public:
    Strategy(TimeGrid grid, std::vector<double> rate, std::vector<BlockTrade> blocks,
             double initial_position = 0.0);

    static Strategy zero(const TimeGrid& grid, double initial_position = 0.0);
    static Strategy from_rate(const SampledPath& rate, double initial_position = 0.0);

    const TimeGrid& grid() const noexcept { return grid_; }
    const SampledPath& rate() const noexcept { return rate_; }
    const std::vector<BlockTrade>& blocks() const noexcept { return blocks_; }
    double initial_position() const noexcept { return initial_position_; }

    double step_rate(std::size_t step) const { return rate_[step]; }
    double block_at(std::size_t index) const { return block_at_[index]; }
    bool has_blocks() const noexcept { return !blocks_.empty(); }

    // Position right after any block at each grid point.
    std::vector<double> positions() const;

private:
    TimeGrid grid_;
    SampledPath rate_;
    std::vector<BlockTrade> blocks_;
    std::vector<double> block_at_;
    double initial_position_;
};

struct StrategyDiagnostics {
    double total_variation = 0.0;
    double sup_rate = 0.0;
    std::size_t block_count = 0;
};

StrategyDiagnostics diagnostics(const Strategy& strategy);

// Net shares traded over [0, T].
double net_volume(const Strategy& strategy);

// CSV layout: index,t,rate,block
void write_strategy_csv(std::ostream& out, const Strategy& strategy);

}  // namespace lobres
