#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace camsurv {

// Rectangular grid with obstacles. Cells are indexed row-major: cell = y*width + x,
// x growing east and y growing south. free_cells is sorted ascending and is the
// canonical enumeration of target locations used by belief vectors and tables.
class GridMap {
public:
    GridMap() : GridMap(1, 1, {}) {}
    GridMap(int width, int height, const std::vector<int>& blocked_cells);

    int width() const { return width_; }
    int height() const { return height_; }
    int num_cells() const { return width_ * height_; }
    int num_free() const { return static_cast<int>(free_cells_.size()); }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
    bool blocked(int cell) const { return blocked_[static_cast<std::size_t>(cell)] != 0; }
    bool free(int cell) const { return !blocked(cell); }

    int cell_at(int x, int y) const { return y * width_ + x; }
    int cell_x(int cell) const { return cell % width_; }
    int cell_y(int cell) const { return cell / width_; }

    const std::vector<int>& free_cells() const { return free_cells_; }

    // Position of a free cell in free_cells(), or -1 for blocked cells.
    int free_index(int cell) const { return free_index_[static_cast<std::size_t>(cell)]; }

    // '#' blocked, '.' free; one string per row.
    std::vector<std::string> ascii() const;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> blocked_;
    std::vector<int> free_cells_;
    std::vector<int> free_index_;
};

// A camera with a finite set of positions; each position observes a fixed set
// of free cells. fov lists are sorted ascending.
struct CameraModel {
    int id = 0;
    std::vector<std::vector<int>> fov_by_state;

    int num_states() const { return static_cast<int>(fov_by_state.size()); }
    const std::vector<int>& fov(int state) const;
};

// One position index per camera.
using JointCameraState = std::vector<int>;

// One goto-state command per camera; the action set per camera equals its
// state set, so an action vector has the same shape as a state vector.
using JointAction = std::vector<int>;

// Union of per-camera fov sets, sorted ascending.
std::vector<int> joint_fov(const std::vector<CameraModel>& cams, const JointCameraState& C);

int fov_complement_size(const GridMap& map, const std::vector<CameraModel>& cams,
                        const JointCameraState& C);

// Deterministic camera transition: each camera jumps to the commanded state.
JointCameraState apply_action(const std::vector<CameraModel>& cams, const JointCameraState& C,
                              const JointAction& A);

// Precomputed joint-fov membership for one camera configuration, used on the
// hot paths (likelihoods, rewards, per-action value sums).
struct FovView {
    std::vector<int> cells;            // sorted ascending
    std::vector<int> free_idx;         // free-cell index of each entry of cells
    std::vector<std::uint8_t> mask;    // indexed by raw cell id
    int complement_size = 0;           // |free cells| - |cells|

    bool contains(int cell) const { return mask[static_cast<std::size_t>(cell)] != 0; }
    int size() const { return static_cast<int>(cells.size()); }
};

FovView make_fov_view(const GridMap& map, const std::vector<CameraModel>& cams,
                      const JointCameraState& C);

}  // namespace camsurv
