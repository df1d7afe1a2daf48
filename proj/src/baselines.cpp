#include "camsurv/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "camsurv/errors.hpp"
#include "camsurv/planner.hpp"

namespace camsurv {

PointEstimateController::PointEstimateController(const GridMap& map,
                                                 const std::vector<CameraModel>& cams,
                                                 const TransitionTable& table, int num_targets,
                                                 int staleness_cap)
    : map_(map),
      cams_(cams),
      table_(table),
      estimates_(static_cast<std::size_t>(num_targets)),
      staleness_cap_(staleness_cap),
      actions_(enumerate_actions(cams)) {}

TargetState PointEstimateController::propagate(const TargetState& s) const {
    return table_.state_at(table_.argmax_row(table_.index_of_state(s, map_)));
}

void PointEstimateController::refresh(int k, const TargetState& s) {
    estimates_[static_cast<std::size_t>(k)] = PointEstimate{s, 0};
}

void PointEstimateController::age(int k) {
    PointEstimate& e = estimates_[static_cast<std::size_t>(k)];
    if (!e.state) return;
    e.state = propagate(*e.state);
    ++e.staleness;
    if (staleness_cap_ > 0 && e.staleness > staleness_cap_) e.state.reset();
}

JointAction PointEstimateController::choose(int /*step*/) {
    // Each estimate is one step old relative to the world that will exist when
    // the chosen configuration takes effect, so score the one-step prediction
    // of every live estimate.
    std::vector<int> predicted_cells;
    predicted_cells.reserve(estimates_.size());
    for (const PointEstimate& e : estimates_) {
        if (e.state) predicted_cells.push_back(propagate(*e.state).location);
    }

    JointAction best = actions_.front();
    int best_score = -1;
    for (const JointAction& A : actions_) {
        FovView fov = make_fov_view(map_, cams_, A);
        int score = 0;
        for (int cell : predicted_cells) {
            if (fov.contains(cell)) ++score;
        }
        if (score > best_score) {
            best_score = score;
            best = A;
        }
    }
    return best;
}

void MpController::observe(const StepInfo& info) {
    for (std::size_t k = 0; k < estimates_.size(); ++k) {
        if (!info.observations[k].is_null()) {
            refresh(static_cast<int>(k), info.truth[k]);
        } else {
            age(static_cast<int>(k));
        }
    }
}

MspController::MspController(const GridMap& map, const std::vector<CameraModel>& cams,
                             const TransitionTable& table, int num_targets, int staleness_cap,
                             const MspParams& params, const Rng& rng)
    : PointEstimateController(map, cams, table, num_targets, staleness_cap),
      params_(params),
      rng_(rng) {
    if (params_.sigma0 < 0.0) throw ConfigError("msp.sigma0 must be >= 0");
    if (params_.growth < 0.0) throw ConfigError("msp.growth must be >= 0");
    if (params_.static_cell < 0 || params_.static_cell >= map.num_cells() ||
        map.blocked(params_.static_cell)) {
        throw ConfigError("msp.static_cell " + std::to_string(params_.static_cell) +
                          " is not a free cell");
    }
    coverage_.assign(static_cast<std::size_t>(map.num_cells()), 0);
    for (int cell : map.free_cells()) {
        if (line_of_sight(map, params_.static_cell, cell)) {
            coverage_[static_cast<std::size_t>(cell)] = 1;
        }
    }
}

int MspController::perturb_location(int cell, Rng& rng) const {
    double cx = map_.cell_x(cell);
    double cy = map_.cell_y(cell);
    double sx = map_.cell_x(params_.static_cell);
    double sy = map_.cell_y(params_.static_cell);
    double distance = std::hypot(cx - sx, cy - sy);
    double stddev = params_.sigma0 * std::sqrt(1.0 + params_.growth * distance);
    double px = cx + rng.normal(0.0, stddev);
    double py = cy + rng.normal(0.0, stddev);
    int ix = static_cast<int>(std::llround(px));
    int iy = static_cast<int>(std::llround(py));
    ix = std::clamp(ix, 0, map_.width() - 1);
    iy = std::clamp(iy, 0, map_.height() - 1);
    return nearest_free_cell(map_, ix, iy);
}

void MspController::observe(const StepInfo& info) {
    for (std::size_t k = 0; k < estimates_.size(); ++k) {
        if (!info.observations[k].is_null()) {
            refresh(static_cast<int>(k), info.truth[k]);  // exact PTZ observation
        } else if (coverage_[static_cast<std::size_t>(info.truth[k].location)]) {
            TargetState reported = info.truth[k];
            reported.location = perturb_location(reported.location, rng_);
            refresh(static_cast<int>(k), reported);
        } else {
            age(static_cast<int>(k));  // occluded: no report at all
        }
    }
}

SysController::SysController(const std::vector<CameraModel>& cams, std::vector<int> phases)
    : cams_(cams), phases_(std::move(phases)) {
    if (phases_.empty()) phases_.assign(cams.size(), 0);
    if (phases_.size() != cams.size()) {
        throw ConfigError("sys controller: got " + std::to_string(phases_.size()) +
                          " phases for " + std::to_string(cams.size()) + " cameras");
    }
}

JointAction SysController::choose(int step) {
    JointAction A(cams_.size());
    for (std::size_t i = 0; i < cams_.size(); ++i) {
        A[i] = (step + phases_[i]) % cams_[i].num_states();
    }
    return A;
}

StatController::StatController(const GridMap& map, const std::vector<CameraModel>& cams) {
    (void)map;
    std::size_t best_size = 0;
    bool first = true;
    for (const JointAction& A : enumerate_actions(cams)) {
        std::size_t size = joint_fov(cams, A).size();
        if (first || size > best_size) {
            best_size = size;
            fixed_ = A;
            first = false;
        }
    }
}

bool line_of_sight(const GridMap& map, int from_cell, int to_cell) {
    double x0 = map.cell_x(from_cell) + 0.5;
    double y0 = map.cell_y(from_cell) + 0.5;
    double x1 = map.cell_x(to_cell) + 0.5;
    double y1 = map.cell_y(to_cell) + 0.5;
    double length = std::hypot(x1 - x0, y1 - y0);
    int samples = std::max(1, static_cast<int>(std::ceil(length * 16.0)));
    for (int i = 0; i <= samples; ++i) {
        double t = static_cast<double>(i) / samples;
        int x = static_cast<int>(std::floor(x0 + t * (x1 - x0)));
        int y = static_cast<int>(std::floor(y0 + t * (y1 - y0)));
        if (!map.in_bounds(x, y)) return false;
        if (map.blocked(map.cell_at(x, y))) return false;
    }
    return true;
}

int nearest_free_cell(const GridMap& map, int x, int y) {
    if (map.free(map.cell_at(x, y))) return map.cell_at(x, y);
    int max_radius = map.width() + map.height();
    for (int r = 1; r <= max_radius; ++r) {
        int best = -1;
        for (int dy = -r; dy <= r; ++dy) {
            int rem = r - std::abs(dy);
            for (int dx : rem == 0 ? std::vector<int>{0} : std::vector<int>{-rem, rem}) {
                int nx = x + dx;
                int ny = y + dy;
                if (!map.in_bounds(nx, ny)) continue;
                int cell = map.cell_at(nx, ny);
                if (map.free(cell) && (best == -1 || cell < best)) best = cell;
            }
        }
        if (best != -1) return best;
    }
    throw RuntimeError("no free cell reachable from (" + std::to_string(x) + "," +
                       std::to_string(y) + ")");
}

}  // namespace camsurv
