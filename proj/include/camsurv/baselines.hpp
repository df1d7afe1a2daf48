#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "camsurv/belief.hpp"
#include "camsurv/gridworld.hpp"
#include "camsurv/motion.hpp"
#include "camsurv/rand.hpp"
#include "camsurv/sensing.hpp"

namespace camsurv {

// Everything a controller may look at after the world has stepped: the action
// it issued, the resulting camera state, the post-move ground truth, and the
// per-target observations sampled under the new configuration. Belief-based
// controllers must not read `truth`; the MDP reconstructions read it only
// where their sensors grant it (see each controller).
struct StepInfo {
    int step = 0;
    JointAction action;
    JointCameraState camera_state;
    std::vector<TargetState> truth;
    std::vector<Observation> observations;
};

class Controller {
public:
    virtual ~Controller() = default;

    virtual std::string name() const = 0;

    // Pick the next joint action from current internal information.
    virtual JointAction choose(int step) = 0;

    // Digest the outcome of the step that followed the chosen action.
    virtual void observe(const StepInfo& info) = 0;

    // Times a zero-evidence observation forced a belief reset; 0 for
    // estimate-based controllers.
    virtual int conflict_count() const { return 0; }

    // Non-null only for the belief-based controller; used by belief emission.
    virtual const JointBelief* belief() const { return nullptr; }
};

// Last-known state per target plus how many steps ago it was refreshed.
struct PointEstimate {
    std::optional<TargetState> state;
    int staleness = 0;
};

// Shared machinery for the point-estimate (MDP-style) controllers: keeps one
// PointEstimate per target, propagates unrefreshed estimates one step along
// the most likely transition, and picks the action maximizing the count of
// one-step-predicted estimate locations inside the candidate fov.
class PointEstimateController : public Controller {
public:
    PointEstimateController(const GridMap& map, const std::vector<CameraModel>& cams,
                            const TransitionTable& table, int num_targets, int staleness_cap);

    JointAction choose(int step) override;

    const std::vector<PointEstimate>& estimates() const { return estimates_; }

protected:
    // Refresh rules differ per controller; these helpers implement the shared
    // parts. refresh() installs an exact or reconstructed state; age() either
    // propagates or drops per the staleness cap.
    void refresh(int k, const TargetState& s);
    void age(int k);

    TargetState propagate(const TargetState& s) const;

    const GridMap& map_;
    const std::vector<CameraModel>& cams_;
    const TransitionTable& table_;
    std::vector<PointEstimate> estimates_;
    int staleness_cap_;  // 0 means estimates are never dropped
    std::vector<JointAction> actions_;
};

// PTZ-only MDP reconstruction: targets inside the active joint fov are seen
// exactly (the simulator resolves identity, and within-fov sensing is
// deterministic, so the estimate is the true state); everything else is
// extrapolated blindly. Never-seen targets contribute nothing to scoring.
class MpController : public PointEstimateController {
public:
    using PointEstimateController::PointEstimateController;

    std::string name() const override { return "mp"; }
    void observe(const StepInfo& info) override;
};

struct MspParams {
    double sigma0 = 0.75;    // noise stddev at zero distance, cells
    double growth = 0.2;     // variance growth per cell of distance
    int static_cell = 0;     // raw cell id of the static camera
};

// Static-plus-PTZ MDP reconstruction: a static camera reports every target it
// has line of sight to, with location noise that grows with distance; PTZ
// observations stay exact and take precedence. Occluded, out-of-fov targets
// are extrapolated like in MpController.
class MspController : public PointEstimateController {
public:
    MspController(const GridMap& map, const std::vector<CameraModel>& cams,
                  const TransitionTable& table, int num_targets, int staleness_cap,
                  const MspParams& params, const Rng& rng);

    std::string name() const override { return "msp"; }
    void observe(const StepInfo& info) override;

    const std::vector<std::uint8_t>& coverage() const { return coverage_; }

    // Rounded isotropic Gaussian displacement with stddev
    // sigma0 * sqrt(1 + growth * distance), clamped to the nearest free cell.
    int perturb_location(int cell, Rng& rng) const;

private:
    MspParams params_;
    Rng rng_;
    std::vector<std::uint8_t> coverage_;  // line-of-sight mask from static_cell
};

// Round-robin sweep: camera i sits in state (step + phase_i) mod |states_i|.
class SysController : public Controller {
public:
    SysController(const std::vector<CameraModel>& cams, std::vector<int> phases);

    std::string name() const override { return "sys"; }
    JointAction choose(int step) override;
    void observe(const StepInfo&) override {}

private:
    const std::vector<CameraModel>& cams_;
    std::vector<int> phases_;
};

// Fixed configuration maximizing the joint fov size (the union, not the sum),
// chosen once by exhaustive enumeration with lexicographic tie-break.
class StatController : public Controller {
public:
    StatController(const GridMap& map, const std::vector<CameraModel>& cams);

    std::string name() const override { return "stat"; }
    JointAction choose(int) override { return fixed_; }
    void observe(const StepInfo&) override {}

    const JointAction& fixed_action() const { return fixed_; }

private:
    JointAction fixed_;
};

// Grid line-of-sight: true when the segment between the two cell centers
// crosses no blocked cell. Used for static-sensor coverage.
bool line_of_sight(const GridMap& map, int from_cell, int to_cell);

// Nearest free cell by Manhattan distance; ties to the smallest cell id.
int nearest_free_cell(const GridMap& map, int x, int y);

}  // namespace camsurv
