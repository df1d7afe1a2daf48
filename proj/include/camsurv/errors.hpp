#pragma once

#include <stdexcept>
#include <string>

namespace camsurv {

// Invalid configuration: bad scenario file, bad flag value, bad cross-reference.
// Maps to process exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while executing an otherwise valid configuration. Exit code 3.
class RuntimeError : public std::runtime_error {
public:
    explicit RuntimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Observation with zero evidence under the predicted belief. Carries enough
// context for the caller to decide recovery (the simulator resets the target
// belief to uniform; library code propagates).
class BeliefConflictError : public RuntimeError {
public:
    BeliefConflictError(const std::string& msg, int observation_cell, int target_index)
        : RuntimeError(msg), observation_cell(observation_cell), target_index(target_index) {}

    int observation_cell;  // -1 encodes the null observation
    int target_index;      // -1 when unknown to the thrower
};

// Brute-force joint-observation enumeration would exceed the safety bound.
class EnumerationLimitError : public RuntimeError {
public:
    explicit EnumerationLimitError(const std::string& msg) : RuntimeError(msg) {}
};

// Metric undefined for the given inputs (zero steps or zero targets).
class MetricError : public RuntimeError {
public:
    explicit MetricError(const std::string& msg) : RuntimeError(msg) {}
};

}  // namespace camsurv
