#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lobres/asymptotics.hpp"
#include "lobres/specs.hpp"

namespace lobres {

// Schema violation: malformed line, unknown or duplicate key, unparsable value.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string key, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

// Well-formed config that breaks a model invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Simulate, Theorem1, Remark1, LemmaJump, TrackerBound, Utility, L2 };

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment(const std::string& name);

struct TrackerOptions {
    double drift = 0.0;
    double volatility = 1.0;
    double bound = 1.0;        // C
    double speed = 1.0;        // M
    double speed_lower = 1.0;  // lower bound on M
    double initial = 0.0;

    friend bool operator==(const TrackerOptions&, const TrackerOptions&) = default;
};

struct UtilityOptions {
    double risk_aversion = 1.0;
    std::vector<double> multipliers{0.5, 1.0, 2.0};
    double initial_position = 0.0;
    std::size_t bootstrap = 200;

    friend bool operator==(const UtilityOptions&, const UtilityOptions&) = default;
};

struct GateOptions {
    std::optional<double> max_slope;
    double tolerance = 0.02;
    std::optional<double> min_positive_fraction;

    friend bool operator==(const GateOptions&, const GateOptions&) = default;
};

// One experiment run. Text form is one `key = value` per line; '#' starts a
// comment. See README for the key list.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Simulate;
    GridRule grid;
    double kappa = 256.0;  // simulate and utility
    std::optional<std::vector<double>> kappa_ladder;
    MonteCarlo mc;
    double x0 = 1.0;
    double budget = 2e10;  // step evaluations before validate warns
    std::string output = "out";

    BookTemplate book;
    FundamentalSpec fundamental;
    StrategySpec strategy;

    double lemma_window = 1.0;
    TrackerOptions tracker;
    UtilityOptions utility;
    UniformBounds l2;
    GateOptions gates;

    // The ladder in effect: the configured one or the experiment default.
    KappaLadder ladder() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize(const RunConfig& config);

// Model invariants; throws ValidationError. parse_config calls this.
void validate_config(const RunConfig& config);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);

ExperimentSetup experiment_setup(const RunConfig& config);
TrackerBoundSetup tracker_bound_setup(const RunConfig& config);
UtilitySetup utility_setup(const RunConfig& config);

}  // namespace lobres
