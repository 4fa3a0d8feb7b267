#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mbred/json_io.hpp"

namespace mbred {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    std::string experiment;
    std::vector<int> dims;                           // empty -> experiment defaults
    std::int64_t samples = -1;                       // negative -> experiment default
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerance_overrides;
    std::string out;                                 // empty: no file, "-": stdout
    int example = 1;                                 // extension experiment: 1, 2, or 3
};

struct CheckRecord {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::int64_t n_cases = 0;
};

struct Report {
    std::string experiment;
    ExperimentConfig config;
    std::vector<CheckRecord> checks;
    double wall_time_s = 0.0;
    std::string version = kVersion;
    Json details = Json::object();

    bool overall_pass() const;
    Json to_json() const;
};

// Runs one experiment (or "all") deterministically: every numeric field of
// the report is a pure function of the config.
Report run(const ExperimentConfig& config);

const std::vector<std::string>& experiment_names();

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

}  // namespace mbred
