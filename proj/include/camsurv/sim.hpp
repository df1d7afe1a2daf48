#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "camsurv/baselines.hpp"
#include "camsurv/belief.hpp"
#include "camsurv/gridworld.hpp"
#include "camsurv/motion.hpp"
#include "camsurv/planner.hpp"
#include "camsurv/rand.hpp"
#include "camsurv/scenario.hpp"
#include "camsurv/sensing.hpp"

namespace camsurv {

// Greedy one-step expected-coverage controller over a factored belief. Holds
// the belief; a zero-evidence observation resets that target's belief to
// uniform and is counted (weakest-assumption recovery, applied here at the
// run-loop layer rather than inside the belief update).
class PomdpController : public Controller {
public:
    PomdpController(const GridMap& map, const std::vector<CameraModel>& cams,
                    const TransitionTable& table, int num_targets, const BeliefInit& init,
                    PlannerConfig cfg = {});

    std::string name() const override { return "pomdp"; }
    JointAction choose(int step) override;
    void observe(const StepInfo& info) override;
    int conflict_count() const override { return conflicts_; }
    const JointBelief* belief() const override { return &belief_; }

private:
    const GridMap& map_;
    const std::vector<CameraModel>& cams_;
    const TransitionTable& table_;
    PlannerConfig cfg_;
    JointBelief belief_;
    int conflicts_ = 0;
};

struct StepRow {
    int step = 0;
    JointAction action;
    JointCameraState camera_state;
    std::vector<int> true_cells;
    std::vector<Observation> observations;
    int m_obs = 0;  // targets whose true cell is inside the joint fov
};

struct RunRecord {
    std::string controller;
    std::uint64_t seed = 0;
    int m_total = 0;
    int tau = 0;
    int belief_conflicts = 0;
    std::vector<StepRow> rows;

    std::vector<int> per_step_obs() const;
};

// Ground truth for one run: spawn states plus the post-move states of every
// step. Generated from the motion stream alone, so it is identical across
// controllers for a given (scenario, seed).
struct Trajectory {
    std::vector<TargetState> spawn;
    std::vector<std::vector<TargetState>> steps;
};

// Uniform spawn: locations without replacement from the free cells, directions
// uniform over 8, velocity fixed to the given index.
std::vector<TargetState> spawn_targets(const GridMap& map, int m, Rng& rng, int velocity_index);

// One motion-model step for every target independently.
std::vector<TargetState> advance_targets(const std::vector<TargetState>& targets,
                                         const TransitionTable& table, const GridMap& map,
                                         Rng& rng);

Trajectory make_trajectory(const Scenario& sc, const TransitionTable& table);

std::unique_ptr<Controller> make_controller(const Scenario& sc, const TransitionTable& table,
                                            const Rng& rng_ctrl);

// Called after the controller has digested each step; used for snapshotting.
using StepHook = std::function<void(int step, const Controller& controller)>;

// The fixed per-step cycle: choose action, move cameras, targets step (from
// the precomputed trajectory), observe under the new configuration, let the
// controller digest, then score ground truth against the joint fov.
RunRecord run_on_trajectory(const Scenario& sc, Controller& controller,
                            const Trajectory& trajectory, const StepHook& after_step = {});

// Convenience wrapper: trajectory + controller + run in one call.
RunRecord run_scenario(const Scenario& sc, const TransitionTable& table,
                       const StepHook& after_step = {});

}  // namespace camsurv
