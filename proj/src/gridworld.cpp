#include "camsurv/gridworld.hpp"

#include <algorithm>

#include "camsurv/errors.hpp"

namespace camsurv {

GridMap::GridMap(int width, int height, const std::vector<int>& blocked_cells)
    : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw ConfigError("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                          std::to_string(height));
    }
    blocked_.assign(static_cast<std::size_t>(num_cells()), 0);
    for (int cell : blocked_cells) {
        if (cell < 0 || cell >= num_cells()) {
            throw ConfigError("blocked cell " + std::to_string(cell) + " outside " +
                              std::to_string(width) + "x" + std::to_string(height) + " grid");
        }
        blocked_[static_cast<std::size_t>(cell)] = 1;
    }
    free_index_.assign(static_cast<std::size_t>(num_cells()), -1);
    for (int cell = 0; cell < num_cells(); ++cell) {
        if (!blocked_[static_cast<std::size_t>(cell)]) {
            free_index_[static_cast<std::size_t>(cell)] = static_cast<int>(free_cells_.size());
            free_cells_.push_back(cell);
        }
    }
    if (free_cells_.empty()) throw ConfigError("grid has no free cells");
}

std::vector<std::string> GridMap::ascii() const {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(height_));
    for (int y = 0; y < height_; ++y) {
        std::string row(static_cast<std::size_t>(width_), '.');
        for (int x = 0; x < width_; ++x) {
            if (blocked(cell_at(x, y))) row[static_cast<std::size_t>(x)] = '#';
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

const std::vector<int>& CameraModel::fov(int state) const {
    if (state < 0 || state >= num_states()) {
        throw ConfigError("camera " + std::to_string(id) + ": state index " +
                          std::to_string(state) + " out of range [0," +
                          std::to_string(num_states()) + ")");
    }
    return fov_by_state[static_cast<std::size_t>(state)];
}

std::vector<int> joint_fov(const std::vector<CameraModel>& cams, const JointCameraState& C) {
    if (C.size() != cams.size()) {
        throw ConfigError("joint camera state has " + std::to_string(C.size()) +
                          " entries for " + std::to_string(cams.size()) + " cameras");
    }
    std::vector<int> cells;
    for (std::size_t i = 0; i < cams.size(); ++i) {
        const std::vector<int>& f = cams[i].fov(C[i]);
        cells.insert(cells.end(), f.begin(), f.end());
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

int fov_complement_size(const GridMap& map, const std::vector<CameraModel>& cams,
                        const JointCameraState& C) {
    return map.num_free() - static_cast<int>(joint_fov(cams, C).size());
}

JointCameraState apply_action(const std::vector<CameraModel>& cams, const JointCameraState& C,
                              const JointAction& A) {
    if (C.size() != cams.size() || A.size() != cams.size()) {
        throw ConfigError("apply_action: state/action arity does not match camera count");
    }
    JointCameraState next(cams.size());
    for (std::size_t i = 0; i < cams.size(); ++i) {
        if (A[i] < 0 || A[i] >= cams[i].num_states()) {
            throw ConfigError("camera " + std::to_string(cams[i].id) + ": action targets state " +
                              std::to_string(A[i]) + " out of range [0," +
                              std::to_string(cams[i].num_states()) + ")");
        }
        next[i] = A[i];
    }
    return next;
}

FovView make_fov_view(const GridMap& map, const std::vector<CameraModel>& cams,
                      const JointCameraState& C) {
    FovView view;
    view.cells = joint_fov(cams, C);
    view.mask.assign(static_cast<std::size_t>(map.num_cells()), 0);
    view.free_idx.reserve(view.cells.size());
    for (int cell : view.cells) {
        if (cell < 0 || cell >= map.num_cells() || map.blocked(cell)) {
            throw ConfigError("fov cell " + std::to_string(cell) + " is not a free cell");
        }
        view.mask[static_cast<std::size_t>(cell)] = 1;
        view.free_idx.push_back(map.free_index(cell));
    }
    view.complement_size = map.num_free() - view.size();
    return view;
}

}  // namespace camsurv
