#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "lobres/order_book.hpp"
#include "lobres/paths.hpp"
#include "lobres/strategy.hpp"

namespace lobres {

struct TimedTrade {
    double time;
    double size;
};

// Blocks placed at the nearest grid points. Times must be strictly
// increasing and no later than `latest` (default: strictly before T).
Strategy block_schedule(const TimeGrid& grid, const std::vector<TimedTrade>& trades,
                        std::optional<double> latest = std::nullopt);

// Replaces every block theta at tau by the constant rate theta / width on
// [tau, tau + width], width = window_factor * kappa^{-1/4}. The window is
// rounded to whole steps and the last step is adjusted so that each window
// trades exactly theta.
Strategy smooth_blocks(const Strategy& blocks, double kappa, double window_factor);

// Target theta_inf tracked at speed sqrt(kappa) * M. The bounds describe the
// target's drift and diffusion coefficients; they are only checked by callers
// that know how the target was generated.
struct TrackerSpec {
    SampledPath target;
    SampledPath speed;  // M
    double kappa;
    double drift_bound = std::numeric_limits<double>::infinity();
    double vol_bound = std::numeric_limits<double>::infinity();
};

// Tracker positions from the exact per-step relaxation toward the
// left-endpoint target:
//   x_{i+1} = target_i + exp(-sqrt(kappa) M_i dt) (x_i - target_i).
// Speeds may be zero here (the position then stays put).
std::vector<double> tracker_positions(const SampledPath& target, const SampledPath& speed,
                                      double kappa, double initial_position);

// Strategy whose rate is the per-step average of tracker_positions. Starts
// at the target's initial value unless `initial_position` is given.
Strategy exponential_tracker(const TrackerSpec& spec,
                             std::optional<double> initial_position = std::nullopt);

// M_t = sqrt(K_t h_t sigma_t^2 / (2 R_t)) for a symmetric book.
SampledPath tracker_speed(const BookParams& book, const SampledPath& volatility,
                          const SampledPath& risk_tolerance);

// Leading-order optimal tracker; `speed_multiplier` scales its speed for
// comparisons against slower/faster competitors.
Strategy optimal_tracker(const BookParams& book, const SampledPath& volatility,
                         const SampledPath& risk_tolerance, const SampledPath& target,
                         std::optional<double> initial_position = std::nullopt,
                         double speed_multiplier = 1.0);

}  // namespace lobres
