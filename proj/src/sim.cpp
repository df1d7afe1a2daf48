#include "camsurv/sim.hpp"

#include <string>

#include "camsurv/errors.hpp"

namespace camsurv {

PomdpController::PomdpController(const GridMap& map, const std::vector<CameraModel>& cams,
                                 const TransitionTable& table, int num_targets,
                                 const BeliefInit& init, PlannerConfig cfg)
    : map_(map), cams_(cams), table_(table), cfg_(cfg) {
    belief_.camera_state = JointCameraState(cams.size(), 0);
    if (init.uniform) {
        TargetBelief u = initial_belief(map, table, InitialBeliefMode::kUniform);
        belief_.targets.assign(static_cast<std::size_t>(num_targets), u);
    } else {
        if (static_cast<int>(init.at.size()) != num_targets) {
            throw ConfigError("initial belief list has " + std::to_string(init.at.size()) +
                              " entries for " + std::to_string(num_targets) + " targets");
        }
        for (const TargetState& t : init.at) {
            belief_.targets.push_back(initial_belief(map, table, InitialBeliefMode::kAt, t));
        }
    }
}

JointAction PomdpController::choose(int /*step*/) {
    return plan(belief_, table_, cams_, map_, cfg_).best_action;
}

void PomdpController::observe(const StepInfo& info) {
    belief_.camera_state = info.camera_state;
    FovView fov = make_fov_view(map_, cams_, info.camera_state);
    for (std::size_t k = 0; k < belief_.targets.size(); ++k) {
        try {
            belief_.targets[k] = update(belief_.targets[k], table_, info.observations[k], fov).posterior;
        } catch (const BeliefConflictError&) {
            belief_.targets[k] = initial_belief(map_, table_, InitialBeliefMode::kUniform);
            ++conflicts_;
        }
    }
}

std::vector<int> RunRecord::per_step_obs() const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const StepRow& row : rows) out.push_back(row.m_obs);
    return out;
}

std::vector<TargetState> spawn_targets(const GridMap& map, int m, Rng& rng, int velocity_index) {
    if (m < 0) throw ConfigError("target count must be >= 0");
    if (m > map.num_free()) {
        throw ConfigError("cannot place " + std::to_string(m) +
                          " targets without replacement on " + std::to_string(map.num_free()) +
                          " free cells");
    }
    // Partial Fisher-Yates over a copy of the free-cell list: m location draws
    // first, then m direction draws, in a fixed order.
    std::vector<int> cells = map.free_cells();
    int n = static_cast<int>(cells.size());
    for (int i = 0; i < m; ++i) {
        int j = i + rng.uniform_int(n - i);
        std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
    }
    std::vector<TargetState> out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)].location = cells[static_cast<std::size_t>(i)];
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)].direction = rng.uniform_int(kNumDirections);
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)].velocity = velocity_index;
    return out;
}

std::vector<TargetState> advance_targets(const std::vector<TargetState>& targets,
                                         const TransitionTable& table, const GridMap& map,
                                         Rng& rng) {
    std::vector<TargetState> out;
    out.reserve(targets.size());
    for (const TargetState& t : targets) {
        const auto& row = table.row(table.index_of_state(t, map));
        double r = rng.uniform01();
        double cum = 0.0;
        int dest = row.back().first;  // guards the 1e-9 normalization slack
        for (const auto& [next, p] : row) {
            cum += p;
            if (r < cum) {
                dest = next;
                break;
            }
        }
        out.push_back(table.state_at(dest));
    }
    return out;
}

Trajectory make_trajectory(const Scenario& sc, const TransitionTable& table) {
    Rng rng_motion = Rng(sc.seed).child("motion");
    Trajectory traj;
    if (!sc.spawns.empty()) {
        traj.spawn = sc.spawns;
    } else {
        traj.spawn = spawn_targets(sc.map, sc.targets, rng_motion, sc.nominal_velocity_index());
    }
    traj.steps.reserve(static_cast<std::size_t>(sc.tau));
    std::vector<TargetState> current = traj.spawn;
    for (int t = 0; t < sc.tau; ++t) {
        current = advance_targets(current, table, sc.map, rng_motion);
        traj.steps.push_back(current);
    }
    return traj;
}

std::unique_ptr<Controller> make_controller(const Scenario& sc, const TransitionTable& table,
                                            const Rng& rng_ctrl) {
    const std::string& id = sc.controller.id;
    int m = sc.num_targets();
    if (id == "pomdp") {
        return std::make_unique<PomdpController>(sc.map, sc.cameras, table, m, sc.initial_belief);
    }
    if (id == "mp") {
        return std::make_unique<MpController>(sc.map, sc.cameras, table, m,
                                              sc.controller.mp_staleness_cap);
    }
    if (id == "msp") {
        return std::make_unique<MspController>(sc.map, sc.cameras, table, m,
                                               sc.controller.mp_staleness_cap, sc.controller.msp,
                                               rng_ctrl);
    }
    if (id == "sys") {
        return std::make_unique<SysController>(sc.cameras, sc.controller.sys_phases);
    }
    if (id == "stat") {
        return std::make_unique<StatController>(sc.map, sc.cameras);
    }
    throw ConfigError("unknown controller '" + id + "'");
}

RunRecord run_on_trajectory(const Scenario& sc, Controller& controller,
                            const Trajectory& trajectory, const StepHook& after_step) {
    if (static_cast<int>(trajectory.steps.size()) != sc.tau) {
        throw ConfigError("trajectory has " + std::to_string(trajectory.steps.size()) +
                          " steps for tau=" + std::to_string(sc.tau));
    }
    RunRecord record;
    record.controller = controller.name();
    record.seed = sc.seed;
    record.m_total = sc.num_targets();
    record.tau = sc.tau;

    JointCameraState C = sc.initial_camera_state();
    Rng rng_obs = Rng(sc.seed).child("obs");  // unused by the noiseless channel

    for (int t = 0; t < sc.tau; ++t) {
        JointAction A;
        try {
            A = controller.choose(t);
        } catch (const std::exception& e) {
            throw RuntimeError("step " + std::to_string(t) + ": controller failed: " + e.what());
        }
        C = apply_action(sc.cameras, C, A);
        const std::vector<TargetState>& truth = trajectory.steps[static_cast<std::size_t>(t)];
        FovView fov = make_fov_view(sc.map, sc.cameras, C);

        StepRow row;
        row.step = t;
        row.action = A;
        row.camera_state = C;
        for (const TargetState& target : truth) {
            Observation z = sample_observation(target.location, fov, rng_obs);
            row.true_cells.push_back(target.location);
            row.observations.push_back(z);
            if (!z.is_null()) ++row.m_obs;
        }

        StepInfo info;
        info.step = t;
        info.action = A;
        info.camera_state = C;
        info.truth = truth;
        info.observations = row.observations;
        try {
            controller.observe(info);
        } catch (const std::exception& e) {
            throw RuntimeError("step " + std::to_string(t) + ": controller failed: " + e.what());
        }
        if (after_step) after_step(t, controller);

        record.rows.push_back(std::move(row));
    }
    record.belief_conflicts = controller.conflict_count();
    return record;
}

RunRecord run_scenario(const Scenario& sc, const TransitionTable& table,
                       const StepHook& after_step) {
    Trajectory traj = make_trajectory(sc, table);
    Rng rng_ctrl = Rng(sc.seed).child("ctrl");
    std::unique_ptr<Controller> controller = make_controller(sc, table, rng_ctrl);
    return run_on_trajectory(sc, *controller, traj, after_step);
}

}  // namespace camsurv
