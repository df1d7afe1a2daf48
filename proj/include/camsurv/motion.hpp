#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "camsurv/gridworld.hpp"

namespace camsurv {

inline constexpr int kNumDirections = 8;

// Direction index d maps to heading 45°*d measured counterclockwise from +x,
// so d=0 is east, d=2 is north (-y in grid rows), d=4 is west, d=6 is south.
struct TargetState {
    int location = 0;   // raw cell id; must be free
    int direction = 0;  // 0..7
    int velocity = 0;   // index into MotionParams::velocities

    bool operator==(const TargetState&) const = default;
};

struct MotionParams {
    double sigma_d_deg = 45.0;              // direction stddev, degrees
    double sigma_v = 0.25;                  // velocity stddev, cells/step
    std::vector<double> velocities{1.0, 1.5, 2.0};  // cells/step, all > 0

    int num_velocities() const { return static_cast<int>(velocities.size()); }
    void validate() const;
};

// Wrapped Gaussian kernel evaluated at the 8 bin centers and normalized.
std::array<double, kNumDirections> direction_transition(int d, const MotionParams& params);

// Non-circular Gaussian kernel over the discrete velocity set, normalized.
std::vector<double> velocity_transition(int v, const MotionParams& params);

// Mass split of the displaced unit-cell footprint over the up-to-4 overlapped
// cells, with blocked or out-of-bounds mass reassigned to staying at l.
// Returns (cell, probability) pairs sorted by cell, summing to 1.
std::vector<std::pair<int, double>> location_transition(int l, int d, int v, const GridMap& map,
                                                        const MotionParams& params);

// Per-target state space 𝒯 = free locations × 8 directions × velocities with
// one sparse stochastic row per state. State indexing is location-major:
// index = (free_location_index * 8 + direction) * |velocities| + velocity,
// so states sharing a location form one contiguous block.
class TransitionTable {
public:
    TransitionTable(const GridMap& map, const MotionParams& params);

    int num_states() const { return num_states_; }
    int num_velocities() const { return num_velocities_; }
    int num_locations() const { return static_cast<int>(free_cells_.size()); }
    int states_per_location() const { return kNumDirections * num_velocities_; }

    // Raw cell id of location block li; blocks follow free-cell order.
    int location_cell(int li) const { return free_cells_[static_cast<std::size_t>(li)]; }

    int index_of(int free_location_index, int direction, int velocity) const {
        return (free_location_index * kNumDirections + direction) * num_velocities_ + velocity;
    }
    int index_of_state(const TargetState& t, const GridMap& map) const {
        return index_of(map.free_index(t.location), t.direction, t.velocity);
    }
    TargetState state_at(int index) const {
        int v = index % num_velocities_;
        int rest = index / num_velocities_;
        return TargetState{location_cell(rest / kNumDirections), rest % kNumDirections, v};
    }

    // Sparse row sorted by destination state index; sums to 1 within 1e-9.
    const std::vector<std::pair<int, double>>& row(int state_index) const {
        return rows_[static_cast<std::size_t>(state_index)];
    }

    // Destination with the largest probability; first (lowest index) on ties.
    int argmax_row(int state_index) const;

private:
    int num_states_;
    int num_velocities_;
    std::vector<int> free_cells_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
};

}  // namespace camsurv
