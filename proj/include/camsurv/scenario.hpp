#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "camsurv/baselines.hpp"
#include "camsurv/gridworld.hpp"
#include "camsurv/motion.hpp"

namespace camsurv {

inline constexpr std::string_view kControllerIds[] = {"pomdp", "mp", "msp", "sys", "stat"};

struct ControllerConfig {
    std::string id = "pomdp";
    MspParams msp;
    std::vector<int> sys_phases;  // empty means all zeros
    int mp_staleness_cap = 0;     // 0 means estimates are never dropped
};

struct BeliefInit {
    bool uniform = true;
    std::vector<TargetState> at;  // one state per target when uniform is false
};

// A fully validated run configuration: the world, the sensors, the motion
// model, the controller, and the run protocol. Cameras all start in state 0.
struct Scenario {
    std::string name;
    GridMap map;
    std::vector<CameraModel> cameras;
    MotionParams motion;
    double nominal_velocity = 1.5;  // spawn velocity; must be in motion.velocities
    ControllerConfig controller;
    int targets = 0;                  // ignored when spawns is non-empty
    std::vector<TargetState> spawns;  // scripted spawn states; empty = uniform spawn
    int tau = 100;
    std::uint64_t seed = 1;
    BeliefInit initial_belief;

    int num_targets() const {
        return spawns.empty() ? targets : static_cast<int>(spawns.size());
    }
    int nominal_velocity_index() const;
    JointCameraState initial_camera_state() const {
        return JointCameraState(cameras.size(), 0);
    }
};

// Parses and validates; every cross-reference (fov cells free, spawn cells
// free, controller id known, phases arity) is checked eagerly. Throws
// ConfigError naming the offending field.
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& doc, const std::string& context);

nlohmann::json scenario_to_json(const Scenario& sc);

// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view data);

// Content hash of the canonical serialization with the two per-run axes (seed
// and controller id) excluded, so seed sweeps and controller comparisons over
// one scenario share a hash. Rendered as 16 hex digits.
std::string scenario_hash(const Scenario& sc);

}  // namespace camsurv
