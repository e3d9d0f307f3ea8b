#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lobres/asymptotics.hpp"
#include "lobres/config.hpp"

namespace lobres {

inline constexpr int kSchemaVersion = 1;

// Filesystem trouble while writing artifacts.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOutcome {
    std::vector<Gate> gates;
    std::vector<std::string> files;  // relative to the output directory, summary.json last

    bool passed() const { return all_passed(gates); }
};

// Runs the configured experiment and writes its CSV files plus summary.json
// into `out`. Gate failures still write every artifact.
RunOutcome run_experiment(const RunConfig& config, const std::filesystem::path& out);

struct RunEstimate {
    double step_evaluations;  // grid steps summed over kappa, paths and cells
    double seconds;
    double memory_bytes;
    bool over_budget;
};

RunEstimate estimate_run(const RunConfig& config);

}  // namespace lobres
