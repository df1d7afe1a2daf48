// Acceptance gate: prints exactly one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Criteria with a runtime budget fail when
// they exceed it, even if the numbers are right.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "camsurv/baselines.hpp"
#include "camsurv/belief.hpp"
#include "camsurv/cli.hpp"
#include "camsurv/gridworld.hpp"
#include "camsurv/metrics.hpp"
#include "camsurv/motion.hpp"
#include "camsurv/planner.hpp"
#include "camsurv/rand.hpp"
#include "camsurv/scenario.hpp"
#include "camsurv/sim.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace camsurv;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string fmt(double v, int precision = 3) {
    std::ostringstream ss;
    ss.precision(precision);
    ss << std::fixed << v;
    return ss.str();
}

std::string fmt_sci(double v) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::scientific << v;
    return ss.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Factored planner vs joint-observation enumeration on randomized small
// worlds, plus argmax agreement between plan() and the brute-force sweep.
Outcome criterion1() {
    Timer timer;
    constexpr double kBudgetSeconds = 60.0;
    constexpr double kTol = 1e-9;

    int fixtures = 0;
    int evaluations = 0;
    int exact_argmax = 0;
    double worst_gap = 0.0;
    Outcome out;

    for (std::uint64_t seed = 1; fixtures < 120; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        JointBelief B;
        B.targets = f.beliefs;
        B.camera_state = f.camera_state;

        double best_slow = -1.0;
        JointAction best_slow_action;
        std::map<JointAction, double> slow_by_action;
        for (const JointAction& A : enumerate_actions(f.cams)) {
            const double fast = value(B, A, table, f.cams, f.map);
            const double slow = value_bruteforce(B, A, table, f.cams, f.map);
            worst_gap = std::max(worst_gap, std::abs(fast - slow));
            slow_by_action[A] = slow;
            if (slow > best_slow) {
                best_slow = slow;
                best_slow_action = A;
            }
            ++evaluations;
        }

        const ValueReport rep = plan(B, table, f.cams, f.map);
        if (rep.best_action == best_slow_action) {
            ++exact_argmax;
        } else if (best_slow - slow_by_action.at(rep.best_action) > kTol) {
            out.pass = false;
            out.detail = "argmax mismatch beyond tolerance on fixture seed " +
                         std::to_string(seed);
            return out;
        }
        ++fixtures;
    }

    if (worst_gap > kTol) out.pass = false;
    const double elapsed = timer.seconds();
    if (elapsed > kBudgetSeconds) out.pass = false;
    out.detail = std::to_string(fixtures) + " fixtures, " + std::to_string(evaluations) +
                 " action evaluations, max |value - value_bruteforce| = " + fmt_sci(worst_gap) +
                 ", argmax exact on " + std::to_string(exact_argmax) + "/" +
                 std::to_string(fixtures) + " (rest within 1e-9 of the maximum), " +
                 fmt(elapsed) + "s of " + fmt(kBudgetSeconds, 0) + "s budget";
    return out;
}

// Factored Bayes update vs enumeration of the joint product space.
Outcome criterion2() {
    Timer timer;
    int fixtures = 0;
    double worst_state_gap = 0.0;
    double worst_sum_gap = 0.0;
    Outcome out;

    for (std::uint64_t seed = 1000; fixtures < 120; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        const std::vector<double> P = oracle::dense_transition(table);
        const FovView fov = make_fov_view(f.map, f.cams, f.camera_state);

        // Draw each observation from the target's predicted belief through
        // the deterministic channel, so the evidence is always positive.
        Rng rng(seed * 31 + 7);
        std::vector<Observation> obs;
        for (const TargetBelief& b : f.beliefs) {
            const std::vector<double> pred =
                oracle::dense_predict(b.probs, P, table.num_states());
            const int t = oracle::sample_index(pred, rng);
            const int sym = oracle::channel_symbol(table.state_at(t).location, fov);
            obs.push_back(sym < 0 ? Observation::null() : Observation::at(sym));
        }

        const oracle::JointPosterior want = oracle::joint_bayes(f.beliefs, table, obs, fov);
        if (want.evidence <= 0.0) continue;

        for (std::size_t k = 0; k < f.beliefs.size(); ++k) {
            const UpdateResult res = update(f.beliefs[k], table, obs[k], fov);
            for (int i = 0; i < table.num_states(); ++i) {
                worst_state_gap = std::max(
                    worst_state_gap, std::abs(res.posterior.probs[static_cast<std::size_t>(i)] -
                                              want.marginals[k][static_cast<std::size_t>(i)]));
            }
            worst_sum_gap = std::max(worst_sum_gap, std::abs(res.posterior.sum() - 1.0));
        }
        ++fixtures;
    }

    if (worst_state_gap > 1e-12 || worst_sum_gap > 1e-9) out.pass = false;
    out.detail = std::to_string(fixtures) +
                 " fixtures, max per-state gap vs joint Bayes = " + fmt_sci(worst_state_gap) +
                 ", max |posterior sum - 1| = " + fmt_sci(worst_sum_gap) + ", " +
                 fmt(timer.seconds()) + "s";
    return out;
}

// Planner runtime grows linearly in the target count on the junction world.
Outcome criterion3() {
    Timer timer;
    constexpr double kBudgetSeconds = 120.0;
    Outcome out;

    const Scenario sc = testutil::load_fixture_scenario("junction");
    const TransitionTable table(sc.map, sc.motion);
    const std::vector<int> m_values{5, 10, 20, 40};
    const ScalingReport report = scaling_bench(sc, table, m_values, 5, false);

    const double ratio = report.median_runtime_s[3] / report.median_runtime_s[1];
    if (report.r_squared < 0.95 || ratio > 5.0) out.pass = false;
    const double elapsed = timer.seconds();
    if (elapsed > kBudgetSeconds) out.pass = false;
    out.detail = "R^2 = " + fmt(report.r_squared, 5) + " (need >= 0.95), runtime(40)/runtime(10) = " +
                 fmt(ratio, 2) + " (need <= 5), medians " + fmt_sci(report.median_runtime_s[0]) +
                 "/" + fmt_sci(report.median_runtime_s[1]) + "/" +
                 fmt_sci(report.median_runtime_s[2]) + "/" + fmt_sci(report.median_runtime_s[3]) +
                 "s, " + fmt(elapsed) + "s of " + fmt(kBudgetSeconds, 0) + "s budget";
    return out;
}

// Controller ordering on seed-matched junction runs.
Outcome criterion4() {
    Timer timer;
    constexpr double kBudgetSeconds = 600.0;
    Outcome out;

    Scenario base = testutil::load_fixture_scenario("junction");
    base.tau = 100;
    const TransitionTable table(base.map, base.motion);

    const std::vector<int> m_values{5, 10, 20};
    const std::vector<std::string> controllers{"pomdp", "mp", "msp", "sys", "stat"};
    std::map<std::string, std::vector<double>> mean_by_controller;  // one mean per m

    for (int m : m_values) {
        std::map<std::string, double> total;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            // Same seed => same trajectory; only the controller changes.
            for (const std::string& id : controllers) {
                Scenario sc = base;
                sc.targets = m;
                sc.seed = seed;
                sc.controller.id = id;
                total[id] += percent_obs(run_scenario(sc, table));
            }
        }
        for (const std::string& id : controllers) {
            mean_by_controller[id].push_back(total[id] / 20.0);
        }
    }

    std::ostringstream table_text;
    for (const std::string& id : controllers) {
        table_text << " " << id << " " << fmt(mean_by_controller[id][0], 1) << "/"
                   << fmt(mean_by_controller[id][1], 1) << "/"
                   << fmt(mean_by_controller[id][2], 1);
    }

    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        if (mean_by_controller["pomdp"][mi] < mean_by_controller["sys"][mi] ||
            mean_by_controller["pomdp"][mi] < mean_by_controller["stat"][mi]) {
            out.pass = false;
        }
    }
    if (mean_by_controller["pomdp"][1] < mean_by_controller["mp"][1]) out.pass = false;

    const double elapsed = timer.seconds();
    if (elapsed > kBudgetSeconds) out.pass = false;
    out.detail = "mean PercentObs at m=5/10/20 over 20 seed-matched runs:" + table_text.str() +
                 "; need pomdp >= sys,stat everywhere and pomdp >= mp at m=10; " + fmt(elapsed) +
                 "s of " + fmt(kBudgetSeconds, 0) + "s budget";
    return out;
}

// The physical-deployment reference numbers are context, not a target.
Outcome criterion5() {
    Outcome out;
    out.detail = "documentation only: the real-camera reference values (98.2, 96.6, 93.3, "
                 "91.5, 87.0 PercentObs) come from a hardware deployment and are recorded in "
                 "README.md as qualitative context; this simulation asserts no reproduction";
    return out;
}

MotionParams deterministic_motion() {
    MotionParams p;
    p.sigma_d_deg = 1e-9;
    p.velocities = {1.0};
    return p;
}

// Open arena whose single camera sweeps three vertical strips; targets start
// on cardinal headings with delta beliefs. Mirrors the baseline unit suite.
Scenario strip_scenario() {
    Scenario sc;
    sc.name = "strips";
    sc.map = GridMap(5, 5, {});
    CameraModel cam;
    cam.id = 0;
    std::vector<int> left, mid, right;
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 5; ++x) {
            const int c = y * 5 + x;
            if (x < 2) left.push_back(c);
            if (x == 2) mid.push_back(c);
            if (x > 2) right.push_back(c);
        }
    }
    cam.fov_by_state = {left, mid, right};
    sc.cameras = {cam};
    sc.motion = deterministic_motion();
    sc.nominal_velocity = 1.0;
    sc.spawns = {TargetState{sc.map.cell_at(0, 1), 0, 0}, TargetState{sc.map.cell_at(4, 3), 4, 0},
                 TargetState{sc.map.cell_at(2, 2), 2, 0}};
    sc.tau = 40;
    sc.seed = 9;
    sc.initial_belief.uniform = false;
    sc.initial_belief.at = sc.spawns;
    return sc;
}

// The invariants the unit suites sweep, replayed here so the gate stands on
// its own: row normalization, free-cell-only support, fov monotonicity,
// predicted-mass collapse, scale-invariant argmax, byte-identical replay, and
// point-estimate equivalence under determinism.
Outcome criterion6() {
    Timer timer;
    Outcome out;
    std::vector<std::string> failed;

    // Transition rows are distributions over free cells only.
    bool rows_ok = true;
    for (std::uint64_t seed = 900; seed < 910; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        for (int s = 0; s < table.num_states() && rows_ok; ++s) {
            double sum = 0.0;
            for (const auto& [dest, p] : table.row(s)) {
                sum += p;
                if (p <= 0.0 || f.map.free_index(table.state_at(dest).location) < 0) {
                    rows_ok = false;
                }
            }
            if (std::abs(sum - 1.0) > 1e-9) rows_ok = false;
        }
    }
    if (!rows_ok) failed.push_back("transition rows");

    // Growing the fov never lowers a target's expected value.
    bool monotone_ok = true;
    for (std::uint64_t seed = 920; seed < 930 && monotone_ok; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        std::vector<int> base = joint_fov(f.cams, f.camera_state);
        std::vector<int> larger = base;
        for (int cell : f.map.free_cells()) {
            if (!std::binary_search(base.begin(), base.end(), cell)) larger.push_back(cell);
            if (larger.size() >= base.size() + 3) break;
        }
        std::sort(larger.begin(), larger.end());
        CameraModel probe;
        probe.fov_by_state = {base, larger};
        const FovView small_view = make_fov_view(f.map, {probe}, {0});
        const FovView large_view = make_fov_view(f.map, {probe}, {1});
        for (const TargetBelief& b : f.beliefs) {
            if (target_value(b, table, small_view) >
                target_value(b, table, large_view) + 1e-12) {
                monotone_ok = false;
            }
        }
    }
    if (!monotone_ok) failed.push_back("fov monotonicity");

    // target_value collapses to the in-fov mass of the predicted belief.
    bool collapse_ok = true;
    for (std::uint64_t seed = 940; seed < 950 && collapse_ok; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        const std::vector<double> P = oracle::dense_transition(table);
        const FovView fov = make_fov_view(f.map, f.cams, f.camera_state);
        for (const TargetBelief& b : f.beliefs) {
            const std::vector<double> pred =
                oracle::dense_predict(b.probs, P, table.num_states());
            double in_fov = 0.0;
            for (int i = 0; i < table.num_states(); ++i) {
                if (fov.contains(table.state_at(i).location)) {
                    in_fov += pred[static_cast<std::size_t>(i)];
                }
            }
            if (std::abs(target_value(b, table, fov) - in_fov) > 1e-12) collapse_ok = false;
        }
    }
    if (!collapse_ok) failed.push_back("collapse identity");

    // The argmax ignores positive scaling of the reward.
    bool scale_ok = true;
    for (std::uint64_t seed = 960; seed < 975 && scale_ok; ++seed) {
        const oracle::Fixture f = oracle::random_fixture(seed);
        const TransitionTable table(f.map, f.motion);
        JointBelief B;
        B.targets = f.beliefs;
        B.camera_state = f.camera_state;
        PlannerConfig scaled;
        scaled.reward_scale = 7.25;
        if (plan(B, table, f.cams, f.map).best_action !=
            plan(B, table, f.cams, f.map, scaled).best_action) {
            scale_ok = false;
        }
    }
    if (!scale_ok) failed.push_back("scale-invariant argmax");

    // Replaying a seed reproduces the run record byte for byte.
    Scenario sc = testutil::load_fixture_scenario("junction");
    sc.targets = 4;
    sc.tau = 25;
    sc.seed = 11;
    const TransitionTable junction_table(sc.map, sc.motion);
    const std::string once = run_record_tsv(run_scenario(sc, junction_table), sc);
    const std::string twice = run_record_tsv(run_scenario(sc, junction_table), sc);
    if (once != twice) failed.push_back("byte-identical replay");

    // With deterministic motion the point-estimate controller matches the
    // belief planner from the first step where every target has been seen.
    const Scenario strips = strip_scenario();
    const TransitionTable strip_table(strips.map, strips.motion);
    const Trajectory traj = make_trajectory(strips, strip_table);
    PomdpController pomdp(strips.map, strips.cameras, strip_table, strips.num_targets(),
                          strips.initial_belief);
    const RunRecord ref = run_on_trajectory(strips, pomdp, traj);
    MpController mp(strips.map, strips.cameras, strip_table, strips.num_targets(), 0);
    int all_seen_step = -1;
    const RunRecord got = run_on_trajectory(strips, mp, traj, [&](int step, const Controller& c) {
        const auto* pe = dynamic_cast<const PointEstimateController*>(&c);
        if (pe == nullptr) return;
        bool all = true;
        for (const PointEstimate& e : pe->estimates()) all = all && e.state.has_value();
        if (all && all_seen_step < 0) all_seen_step = step;
    });
    bool mp_ok = all_seen_step >= 0 && all_seen_step < strips.tau - 2;
    if (mp_ok) {
        for (int s = all_seen_step + 1; s < strips.tau; ++s) {
            if (got.rows[static_cast<std::size_t>(s)].action !=
                ref.rows[static_cast<std::size_t>(s)].action) {
                mp_ok = false;
            }
        }
    }
    if (!mp_ok) failed.push_back("point-estimate equivalence");

    if (!failed.empty()) {
        out.pass = false;
        std::string names;
        for (const std::string& f : failed) names += (names.empty() ? "" : ", ") + f;
        out.detail = "failed properties: " + names;
        return out;
    }
    out.detail = "transition rows normalized on free cells, fov monotonicity, predicted-mass "
                 "collapse, scale-invariant argmax, byte-identical replay, point-estimate "
                 "equivalence under deterministic motion; " +
                 fmt(timer.seconds()) + "s";
    return out;
}

}  // namespace

int main() {
    int failures = 0;
    const auto report = [&](int index, Outcome (*fn)()) {
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::cout << "CRITERION " << index << ": " << (out.pass ? "PASS" : "FAIL") << " - "
                  << out.detail << "\n"
                  << std::flush;
    };

    report(1, criterion1);
    report(2, criterion2);
    report(3, criterion3);
    report(4, criterion4);
    report(5, criterion5);
    report(6, criterion6);

    std::cout << (failures == 0 ? "acceptance: all 6 criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
