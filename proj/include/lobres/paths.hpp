#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lobres {

// Raised when a coefficient or path evaluation produces a non-finite value.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Uniform grid t_i = i * T / N, i = 0..N.
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t steps);

    double horizon() const noexcept { return horizon_; }
    std::size_t steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_ + 1; }
    double spacing() const noexcept { return spacing_; }
    double time(std::size_t i) const noexcept {
        return i == steps_ ? horizon_ : static_cast<double>(i) * spacing_;
    }
    std::size_t nearest_index(double t) const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double horizon_;
    std::size_t steps_;
    double spacing_;
};

TimeGrid make_grid(double horizon, std::size_t steps);

// A process sampled on every point of a grid.
class SampledPath {
public:
    SampledPath(TimeGrid grid, std::vector<double> values);
    SampledPath(TimeGrid grid, double fill);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& mutable_values() noexcept { return values_; }

    double min() const;
    double max() const;
    bool is_constant() const;

private:
    TimeGrid grid_;
    std::vector<double> values_;
};

// Gaussian source for one Monte-Carlo path. The engine is std::mt19937_64
// seeded from splitmix64(seed, stream); normals use the Marsaglia polar
// method on 53-bit uniforms. Changing either breaks stored reference outputs.
class RandomSource {
public:
    static constexpr int kVersion = 1;

    RandomSource(std::uint64_t seed, std::uint64_t stream);

    double uniform();
    double normal();
    std::uint64_t next_u64() { return engine_(); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

using TimeFunction = std::function<double(double)>;
using Coefficient = std::function<double(double t, double s)>;

SampledPath sample_brownian(const TimeGrid& grid, RandomSource& rng);

// Euler-Maruyama: s_{i+1} = s_i + drift(t_i, s_i) dt + vol(t_i, s_i) dW_i.
SampledPath sample_ito(const TimeGrid& grid, const Coefficient& drift, const Coefficient& vol,
                       double s0, RandomSource& rng);

// Same scheme driven by an existing Brownian path.
SampledPath ito_from_brownian(const SampledPath& brownian, const Coefficient& drift,
                              const Coefficient& vol, double s0);

SampledPath constant_path(const TimeGrid& grid, double c);
SampledPath function_path(const TimeGrid& grid, const TimeFunction& f);

// Subsamples a path onto a coarser grid nested in its own (same horizon,
// steps dividing the fine step count).
SampledPath restrict_to(const SampledPath& fine, const TimeGrid& coarse);

}  // namespace lobres
