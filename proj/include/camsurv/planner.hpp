#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "camsurv/belief.hpp"
#include "camsurv/gridworld.hpp"
#include "camsurv/motion.hpp"

namespace camsurv {

struct PlannerConfig {
    // Positive multiplier on the per-state observation reward. The argmax is
    // invariant under it; it exists so that invariance is testable.
    double reward_scale = 1.0;

    // Refuse brute-force observation enumeration beyond this many joint
    // observations.
    std::uint64_t max_enumeration = 1000000;
};

// 1 when the target location is inside the joint fov, else 0.
int reward_state(const TargetState& t, const FovView& fov);

// Expected one-target reward: probability mass on in-fov locations, scaled.
// The table supplies the state-index-to-location layout.
double reward_belief(const TargetBelief& b, const TransitionTable& table, const FovView& fov,
                     double reward_scale = 1.0);

// One target's expected next-step observation reward under candidate camera
// configuration C' (given as its fov view): the sum over in-fov observation
// symbols of the unnormalized predicted-and-weighted posterior mass. Equals
// the in-fov mass of the predicted belief; tests pin that collapse.
double target_value(const TargetBelief& b, const TransitionTable& table, const FovView& fov,
                    double reward_scale = 1.0);

// Σ_k target_value(b_k, C') with C' = apply_action(C, A).
double value(const JointBelief& B, const JointAction& A, const TransitionTable& table,
             const std::vector<CameraModel>& cams, const GridMap& map,
             const PlannerConfig& cfg = {});

// Reference evaluation by explicit enumeration of all joint observations:
// Σ_Z R(B'_Z) P(Z|B,A) with per-target posteriors computed by the Bayes
// update and P(Z|B,A) the product of per-target observation probabilities.
// Exponential in the number of targets; guarded by cfg.max_enumeration.
double value_bruteforce(const JointBelief& B, const JointAction& A, const TransitionTable& table,
                        const std::vector<CameraModel>& cams, const GridMap& map,
                        const PlannerConfig& cfg = {});

struct ValueReport {
    JointAction best_action;
    double best_value = 0.0;
    std::vector<std::pair<JointAction, double>> per_action_values;  // lex order
};

// Greedy one-step policy: evaluates every joint action (full cross product of
// per-camera state sets) and returns the maximizer; ties go to the
// lexicographically smallest action vector. Per-target predicted location
// marginals are computed once, so runtime is linear in the target count.
ValueReport plan(const JointBelief& B, const TransitionTable& table,
                 const std::vector<CameraModel>& cams, const GridMap& map,
                 const PlannerConfig& cfg = {});

// All joint actions in lexicographic order (last camera varying fastest).
std::vector<JointAction> enumerate_actions(const std::vector<CameraModel>& cams);

}  // namespace camsurv
