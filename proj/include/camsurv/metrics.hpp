#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camsurv/scenario.hpp"
#include "camsurv/sim.hpp"

namespace camsurv {

struct MetricSummary {
    std::string controller;
    std::uint64_t seed = 0;
    int m_total = 0;
    int tau = 0;
    double percent_obs = 0.0;  // in [0, 100]
    std::vector<int> per_step_obs;
    int belief_conflicts = 0;
};

// 100 / (tau * m_total) * sum of per-step observed counts.
double percent_obs(const RunRecord& record);

MetricSummary summarize(const RunRecord& record);

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    double min = 0.0;
    double max = 0.0;
    int n = 0;
};

Aggregate aggregate(const std::vector<double>& values);

struct ScalingReport {
    std::vector<int> m_values;
    std::vector<double> median_runtime_s;
    int repeats = 0;
    double slope = 0.0;      // seconds per target
    double intercept = 0.0;  // seconds
    double r_squared = 0.0;
    std::vector<double> residuals;
};

// Times only the action-selection call at each target count: uniform beliefs,
// one discarded warm-up, `repeats` timed runs, median per m, then a least
// squares line fit. With stub_planner the timed call does m-independent work,
// giving the flat control case.
ScalingReport scaling_bench(const Scenario& sc, const TransitionTable& table,
                            const std::vector<int>& m_values, int repeats,
                            bool stub_planner = false);

// Least squares fit of y = intercept + slope * x with coefficient of
// determination; r_squared is 1 when the responses are constant.
void fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
              double& intercept, double& r_squared, std::vector<double>& residuals);

}  // namespace camsurv
