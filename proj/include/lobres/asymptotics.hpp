#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lobres/specs.hpp"

namespace lobres {

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Strictly increasing positive resilience scales.
class KappaLadder {
public:
    explicit KappaLadder(std::vector<double> values);
    static KappaLadder geometric(double first, std::size_t count, double ratio = 2.0);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double max() const { return values_.back(); }

    friend bool operator==(const KappaLadder&, const KappaLadder&) = default;

private:
    std::vector<double> values_;
};

struct RateFit {
    double slope;
    double intercept;
    double residual;  // root-mean-square residual in log space
};

// Least squares of log e on log kappa over the points with e > 0.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct Gate {
    std::string name;
    bool passed;
    std::string detail;
};

bool all_passed(const std::vector<Gate>& gates);

// ---------------------------------------------------------------------------
// OW vs AC convergence over a kappa ladder.

struct ConvergenceRow {
    double kappa;
    double mean_err;  // E sup_t |X^OW - X^AC|
    double p95_err;   // 95th percentile of the sup difference
    double l2_err;    // sqrt(E sup_t |X^OW - X^AC|^2)
    double kappa_x_err;
    double sqrt_kappa_x_err;
    double slope_so_far;  // NaN until three positive points are available
};

struct ConvergenceReport {
    std::string metric;  // "mean" or "l2": the error fitted and scaled
    std::vector<ConvergenceRow> rows;
    std::optional<RateFit> fit;
    std::size_t zero_error_points = 0;

    double primary(std::size_t i) const {
        return metric == "l2" ? rows[i].l2_err : rows[i].mean_err;
    }
};

struct ExperimentSetup {
    GridRule grid;
    BookTemplate book;
    FundamentalSpec fundamental;
    StrategySpec strategy;
    KappaLadder ladder = KappaLadder::geometric(16.0, 9);
    MonteCarlo mc;
    double initial_wealth = 1.0;
};

// Fundamental path for Monte-Carlo path `stream` on the grid used at kappa.
// Brownian increments are drawn once on the finest ladder grid and
// subsampled, so every kappa sees the same noise.
SampledPath common_fundamental(const ExperimentSetup& setup, std::size_t stream, double kappa);

ConvergenceReport theorem1_experiment(const ExperimentSetup& setup);

// Strategy rate scaled by kappa^{1/4}; errors reported with sqrt(kappa) scaling.
ConvergenceReport remark1_experiment(const ExperimentSetup& setup);

struct UniformBounds {
    double bound = 10.0;            // C: rate, (1-alpha)/h, alpha/h, eps
    double resilience_lower = 1e-3;  // K >= this

    friend bool operator==(const UniformBounds&, const UniformBounds&) = default;
};

// Same mechanics as theorem1 with the L2 norm as the fitted metric. Every
// sampled coefficient and rate is checked against the declared bounds.
ConvergenceReport l2_convergence_experiment(const ExperimentSetup& setup,
                                            const UniformBounds& bounds, bool scaled_rates = false);

std::vector<Gate> convergence_gates(const ConvergenceReport& report, double scale_exponent,
                                    bool upper_half_only, double max_slope);

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

// ---------------------------------------------------------------------------
// Block trades against their smoothed versions.

struct LemmaRow {
    double kappa;
    double mean_diff;
    double min_diff;
    double positive_fraction;
};

struct LemmaReport {
    std::vector<LemmaRow> rows;
    double limit;  // sum over blocks of (1 - alpha) theta^2 / (2 h)
    bool deterministic;
};

LemmaReport lemma_jump_experiment(const ExperimentSetup& setup, double window_factor);

std::vector<Gate> lemma_gates(const LemmaReport& report, double tolerance,
                              double min_positive_fraction);

void write_lemma_csv(std::ostream& out, const LemmaReport& report);

// ---------------------------------------------------------------------------
// E[sup_t sqrt(kappa) |target - tracker|^2] against 5 C^2 T / M_lower.

struct TrackerBoundSetup {
    GridRule grid;
    double drift = 0.0;
    double volatility = 1.0;
    double coefficient_bound = 1.0;  // C
    double speed = 1.0;              // M
    double speed_lower = 1.0;        // lower bound on M
    double initial_target = 0.0;
    KappaLadder ladder = KappaLadder::geometric(16.0, 7);
    MonteCarlo mc;
};

struct TrackerBoundRow {
    double kappa;
    double estimate;
    double std_error;
    bool violated;  // estimate > bound + 3 standard errors
};

struct TrackerBoundReport {
    std::vector<TrackerBoundRow> rows;
    double bound;
};

TrackerBoundReport tracker_bound_experiment(const TrackerBoundSetup& setup);
std::vector<Gate> tracker_bound_gates(const TrackerBoundReport& report);
void write_tracker_bound_csv(std::ostream& out, const TrackerBoundReport& report);

// ---------------------------------------------------------------------------
// CARA certainty equivalents of trackers with scaled speeds.

struct UtilitySetup {
    ExperimentSetup base;  // book, fundamental, grid, Monte-Carlo settings
    double risk_aversion = 1.0;
    std::vector<double> multipliers{0.5, 1.0, 2.0};
    double kappa = 256.0;
    double initial_position = 0.0;
    std::size_t bootstrap_resamples = 200;
};

struct CertaintyEquivalent {
    double value;
    double ci_low;
    double ci_high;
    double half_width() const { return 0.5 * (ci_high - ci_low); }
};

struct UtilityRow {
    double kappa;
    double multiplier;
    CertaintyEquivalent ow;
    double ac;
};

struct UtilityReport {
    std::vector<UtilityRow> comparison;  // every multiplier at the comparison kappa
    std::vector<UtilityRow> ladder;      // multiplier 1 across the kappa ladder
    double frictionless;                 // x0 + mu^2 T / (2 gamma sigma^2)
    double kappa;
};

// CE = -log(mean exp(-gamma X)) / gamma with a percentile bootstrap interval.
CertaintyEquivalent certainty_equivalent(const std::vector<double>& wealth, double risk_aversion,
                                         std::size_t resamples, std::uint64_t seed);

UtilityReport utility_experiment(const UtilitySetup& setup);
std::vector<Gate> utility_gates(const UtilityReport& report);
void write_utility_csv(std::ostream& out, const UtilityReport& report);

}  // namespace lobres
