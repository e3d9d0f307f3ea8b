#include "lobres/paths.hpp"

#include <algorithm>
#include <cmath>

namespace lobres {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

TimeGrid::TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("time grid horizon must be positive and finite");
    }
    if (steps == 0) {
        throw std::invalid_argument("time grid needs at least one step");
    }
    spacing_ = horizon_ / static_cast<double>(steps_);
}

std::size_t TimeGrid::nearest_index(double t) const {
    const double x = std::round(t / spacing_);
    if (x < 0.0 || x > static_cast<double>(steps_)) {
        throw std::invalid_argument("time " + std::to_string(t) + " outside the grid");
    }
    return static_cast<std::size_t>(x);
}

TimeGrid make_grid(double horizon, std::size_t steps) { return TimeGrid(horizon, steps); }

SampledPath::SampledPath(TimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("path length " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(grid_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NumericFailure("non-finite path value", i);
        }
    }
}

SampledPath::SampledPath(TimeGrid grid, double fill)
    : SampledPath(grid, std::vector<double>(grid.size(), fill)) {}

double SampledPath::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledPath::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool SampledPath::is_constant() const {
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return v == values_.front(); });
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream + 1))) {}

double RandomSource::uniform() {
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

double RandomSource::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

SampledPath sample_brownian(const TimeGrid& grid, RandomSource& rng) {
    std::vector<double> w(grid.size());
    const double sd = std::sqrt(grid.spacing());
    w[0] = 0.0;
    for (std::size_t i = 0; i < grid.steps(); ++i) {
        w[i + 1] = w[i] + sd * rng.normal();
    }
    return SampledPath(grid, std::move(w));
}

SampledPath ito_from_brownian(const SampledPath& brownian, const Coefficient& drift,
                              const Coefficient& vol, double s0) {
    const TimeGrid& grid = brownian.grid();
    const double dt = grid.spacing();
    std::vector<double> s(grid.size());
    s[0] = s0;
    for (std::size_t i = 0; i < grid.steps(); ++i) {
        const double t = grid.time(i);
        const double mu = drift(t, s[i]);
        const double sigma = vol(t, s[i]);
        if (!std::isfinite(mu) || !std::isfinite(sigma)) {
            throw NumericFailure("non-finite SDE coefficient", i);
        }
        s[i + 1] = s[i] + mu * dt + sigma * (brownian[i + 1] - brownian[i]);
        if (!std::isfinite(s[i + 1])) {
            throw NumericFailure("SDE path diverged", i);
        }
    }
    return SampledPath(grid, std::move(s));
}

SampledPath sample_ito(const TimeGrid& grid, const Coefficient& drift, const Coefficient& vol,
                       double s0, RandomSource& rng) {
    return ito_from_brownian(sample_brownian(grid, rng), drift, vol, s0);
}

SampledPath constant_path(const TimeGrid& grid, double c) {
    if (!std::isfinite(c)) {
        throw std::invalid_argument("constant path value must be finite");
    }
    return SampledPath(grid, c);
}

SampledPath function_path(const TimeGrid& grid, const TimeFunction& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(grid.time(i));
        if (!std::isfinite(v[i])) {
            throw NumericFailure("non-finite function value", i);
        }
    }
    return SampledPath(grid, std::move(v));
}

SampledPath restrict_to(const SampledPath& fine, const TimeGrid& coarse) {
    const TimeGrid& g = fine.grid();
    if (g.horizon() != coarse.horizon() || g.steps() % coarse.steps() != 0) {
        throw std::invalid_argument("coarse grid is not nested in the fine grid");
    }
    const std::size_t stride = g.steps() / coarse.steps();
    std::vector<double> v(coarse.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = fine[i * stride];
    }
    return SampledPath(coarse, std::move(v));
}

}  // namespace lobres
