#include "camsurv/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "camsurv/errors.hpp"
#include "camsurv/planner.hpp"

namespace camsurv {

double percent_obs(const RunRecord& record) {
    if (record.tau < 1) throw MetricError("percent_obs undefined for tau < 1");
    if (record.m_total < 1) throw MetricError("percent_obs undefined without targets");
    long long total = 0;
    for (const StepRow& row : record.rows) total += row.m_obs;
    return 100.0 * static_cast<double>(total) /
           (static_cast<double>(record.tau) * static_cast<double>(record.m_total));
}

MetricSummary summarize(const RunRecord& record) {
    MetricSummary s;
    s.controller = record.controller;
    s.seed = record.seed;
    s.m_total = record.m_total;
    s.tau = record.tau;
    s.percent_obs = percent_obs(record);
    s.per_step_obs = record.per_step_obs();
    s.belief_conflicts = record.belief_conflicts;
    return s;
}

Aggregate aggregate(const std::vector<double>& values) {
    if (values.empty()) throw MetricError("aggregate of zero summaries");
    Aggregate a;
    a.n = static_cast<int>(values.size());
    a.min = values.front();
    a.max = values.front();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        a.min = std::min(a.min, v);
        a.max = std::max(a.max, v);
    }
    a.mean = sum / static_cast<double>(a.n);
    double sq = 0.0;
    for (double v : values) sq += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(sq / static_cast<double>(a.n));
    return a;
}

void fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
              double& intercept, double& r_squared, std::vector<double>& residuals) {
    if (x.size() != y.size() || x.size() < 2) throw MetricError("line fit needs >= 2 points");
    double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw MetricError("line fit needs distinct x values");
    slope = sxy / sxx;
    intercept = my - slope * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    residuals.clear();
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (intercept + slope * x[i]);
        residuals.push_back(r);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ScalingReport scaling_bench(const Scenario& sc, const TransitionTable& table,
                            const std::vector<int>& m_values, int repeats, bool stub_planner) {
    if (m_values.size() < 3) throw ConfigError("scaling bench needs >= 3 target counts");
    if (!std::is_sorted(m_values.begin(), m_values.end())) {
        throw ConfigError("scaling bench target counts must be ascending");
    }
    if (repeats < 2) throw ConfigError("scaling bench needs >= 2 repeats");

    ScalingReport report;
    report.m_values = m_values;
    report.repeats = repeats;

    TargetBelief uniform = initial_belief(sc.map, table, InitialBeliefMode::kUniform);
    for (int m : m_values) {
        if (m < 1) throw ConfigError("scaling bench target counts must be >= 1");
        JointBelief B;
        B.camera_state = sc.initial_camera_state();
        B.targets.assign(static_cast<std::size_t>(m), uniform);

        JointBelief stub;
        stub.camera_state = B.camera_state;
        stub.targets.assign(1, uniform);
        const JointBelief& timed = stub_planner ? stub : B;

        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(repeats));
        volatile double sink = 0.0;
        for (int r = 0; r <= repeats; ++r) {  // first iteration warms and is discarded
            auto start = std::chrono::steady_clock::now();
            ValueReport vr = plan(timed, table, sc.cameras, sc.map);
            auto stop = std::chrono::steady_clock::now();
            sink = sink + vr.best_value;
            if (r > 0) times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        report.median_runtime_s.push_back(median(times));
    }

    std::vector<double> x(report.m_values.begin(), report.m_values.end());
    fit_line(x, report.median_runtime_s, report.slope, report.intercept, report.r_squared,
             report.residuals);
    return report;
}

}  // namespace camsurv
