#pragma once

#include <vector>

#include "camsurv/gridworld.hpp"
#include "camsurv/motion.hpp"
#include "camsurv/sensing.hpp"

namespace camsurv {

// Dense distribution over one target's state space 𝒯, ordered by
// TransitionTable state index. Entries are >= 0 and sum to 1 within 1e-9.
struct TargetBelief {
    std::vector<double> probs;

    double sum() const;
    void normalize();  // divides by sum(); throws RuntimeError on zero mass
};

// Factored belief over m targets plus the fully observable camera state. The
// joint distribution is by construction the product of the per-target factors;
// it is never materialized.
struct JointBelief {
    std::vector<TargetBelief> targets;
    JointCameraState camera_state;
};

// p(t') = Σ_t P(t'|t) b(t). Stochastic rows preserve total mass.
std::vector<double> predict(const TargetBelief& b, const TransitionTable& table);

struct UpdateResult {
    TargetBelief posterior;
    double evidence;  // η_k⁻¹: total unnormalized posterior mass
};

// One exact Bayes step: weight the predicted belief by the observation
// likelihood under the post-action camera state, then renormalize. Throws
// BeliefConflictError when the observation has zero evidence.
UpdateResult update(const TargetBelief& b, const TransitionTable& table, const Observation& z,
                    const FovView& fov);

// Updates every factor independently and advances the camera state; the
// factored form is preserved. Belief conflicts propagate to the caller.
JointBelief joint_update(const JointBelief& B, const TransitionTable& table,
                         const std::vector<Observation>& Z, const JointAction& A,
                         const std::vector<CameraModel>& cams, const GridMap& map);

enum class InitialBeliefMode { kUniform, kAt };

// Uniform over all states (free locations only, by construction), or a delta
// at a given state.
TargetBelief initial_belief(const GridMap& map, const TransitionTable& table,
                            InitialBeliefMode mode, const TargetState& at = {});

}  // namespace camsurv
