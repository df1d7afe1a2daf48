#include "camsurv/motion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "camsurv/errors.hpp"

namespace camsurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Overlap weights below this are treated as zero before renormalization, so
// integer displacements produce exact one-hot rows despite cos/sin rounding.
constexpr double kOverlapEpsilon = 1e-12;

}  // namespace

void MotionParams::validate() const {
    if (!(sigma_d_deg > 0.0)) throw ConfigError("motion.sigma_d_deg must be > 0");
    if (!(sigma_v > 0.0)) throw ConfigError("motion.sigma_v must be > 0");
    if (velocities.empty()) throw ConfigError("motion.velocities must be non-empty");
    for (double v : velocities) {
        if (!(v > 0.0)) throw ConfigError("motion.velocities entries must be > 0");
    }
}

std::array<double, kNumDirections> direction_transition(int d, const MotionParams& params) {
    if (d < 0 || d >= kNumDirections) throw ConfigError("direction index out of range");
    std::array<double, kNumDirections> out{};
    double sum = 0.0;
    for (int dp = 0; dp < kNumDirections; ++dp) {
        int steps = std::abs(dp - d) % kNumDirections;
        steps = std::min(steps, kNumDirections - steps);  // wrapped bin distance
        double delta_deg = 45.0 * steps;
        double w = std::exp(-(delta_deg * delta_deg) / (2.0 * params.sigma_d_deg * params.sigma_d_deg));
        out[static_cast<std::size_t>(dp)] = w;
        sum += w;
    }
    for (double& w : out) w /= sum;
    return out;
}

std::vector<double> velocity_transition(int v, const MotionParams& params) {
    if (v < 0 || v >= params.num_velocities()) throw ConfigError("velocity index out of range");
    std::vector<double> out(params.velocities.size());
    double mean = params.velocities[static_cast<std::size_t>(v)];
    double sum = 0.0;
    for (std::size_t i = 0; i < params.velocities.size(); ++i) {
        double delta = params.velocities[i] - mean;
        double w = std::exp(-(delta * delta) / (2.0 * params.sigma_v * params.sigma_v));
        out[i] = w;
        sum += w;
    }
    for (double& w : out) w /= sum;
    return out;
}

std::vector<std::pair<int, double>> location_transition(int l, int d, int v, const GridMap& map,
                                                        const MotionParams& params) {
    if (map.blocked(l)) throw ConfigError("location_transition from blocked cell " + std::to_string(l));
    double speed = params.velocities.at(static_cast<std::size_t>(v));
    double theta = (kPi / 4.0) * d;
    double dx = speed * std::cos(theta);
    double dy = -speed * std::sin(theta);  // y grows south, heading angle is standard math CCW

    // The unit-cell footprint displaced by (dx, dy) overlaps at most 4 cells;
    // the overlap area factorizes per axis.
    double fx = std::floor(dx);
    double fy = std::floor(dy);
    double rx = dx - fx;
    double ry = dy - fy;
    int bx = map.cell_x(l) + static_cast<int>(fx);
    int by = map.cell_y(l) + static_cast<int>(fy);

    struct Part {
        int x, y;
        double w;
    };
    Part parts[4] = {
        {bx, by, (1.0 - rx) * (1.0 - ry)},
        {bx + 1, by, rx * (1.0 - ry)},
        {bx, by + 1, (1.0 - rx) * ry},
        {bx + 1, by + 1, rx * ry},
    };

    double kept = 0.0;
    for (Part& p : parts) {
        if (p.w < kOverlapEpsilon) p.w = 0.0;
        kept += p.w;
    }

    std::map<int, double> mass;  // destination cell -> probability
    for (const Part& p : parts) {
        if (p.w == 0.0) continue;
        double w = p.w / kept;
        if (!map.in_bounds(p.x, p.y) || map.blocked(map.cell_at(p.x, p.y))) {
            mass[l] += w;  // blocked or outside: stay
        } else {
            mass[map.cell_at(p.x, p.y)] += w;
        }
    }

    return {mass.begin(), mass.end()};
}

TransitionTable::TransitionTable(const GridMap& map, const MotionParams& params) {
    params.validate();
    num_velocities_ = params.num_velocities();
    num_states_ = map.num_free() * kNumDirections * num_velocities_;
    free_cells_ = map.free_cells();
    rows_.resize(static_cast<std::size_t>(num_states_));

    // Direction and velocity factors do not depend on location; location
    // factors do not depend on the previous direction/velocity. Precompute all.
    std::array<std::array<double, kNumDirections>, kNumDirections> dir;
    for (int d = 0; d < kNumDirections; ++d) dir[static_cast<std::size_t>(d)] = direction_transition(d, params);
    std::vector<std::vector<double>> vel(static_cast<std::size_t>(num_velocities_));
    for (int v = 0; v < num_velocities_; ++v) vel[static_cast<std::size_t>(v)] = velocity_transition(v, params);

    std::vector<std::vector<std::pair<int, double>>> loc(
        static_cast<std::size_t>(map.num_free() * kNumDirections * num_velocities_));
    for (int li = 0; li < map.num_free(); ++li) {
        for (int dp = 0; dp < kNumDirections; ++dp) {
            for (int vp = 0; vp < num_velocities_; ++vp) {
                loc[static_cast<std::size_t>((li * kNumDirections + dp) * num_velocities_ + vp)] =
                    location_transition(map.free_cells()[static_cast<std::size_t>(li)], dp, vp, map, params);
            }
        }
    }

    for (int li = 0; li < map.num_free(); ++li) {
        for (int d = 0; d < kNumDirections; ++d) {
            for (int v = 0; v < num_velocities_; ++v) {
                std::vector<std::pair<int, double>>& row =
                    rows_[static_cast<std::size_t>(index_of(li, d, v))];
                for (int dp = 0; dp < kNumDirections; ++dp) {
                    double pd = dir[static_cast<std::size_t>(d)][static_cast<std::size_t>(dp)];
                    for (int vp = 0; vp < num_velocities_; ++vp) {
                        double pdv = pd * vel[static_cast<std::size_t>(v)][static_cast<std::size_t>(vp)];
                        if (pdv == 0.0) continue;  // kernel underflow; keep rows strictly positive
                        const std::vector<std::pair<int, double>>& lrow =
                            loc[static_cast<std::size_t>((li * kNumDirections + dp) * num_velocities_ + vp)];
                        for (const auto& [cell, pl] : lrow) {
                            row.emplace_back(index_of(map.free_index(cell), dp, vp), pdv * pl);
                        }
                    }
                }
                std::sort(row.begin(), row.end());
                // Merge duplicate destinations (distinct overlap parts can land
                // on the same cell after blocked-mass reassignment).
                std::size_t out = 0;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (out > 0 && row[out - 1].first == row[i].first) {
                        row[out - 1].second += row[i].second;
                    } else {
                        row[out++] = row[i];
                    }
                }
                row.resize(out);
            }
        }
    }
}

int TransitionTable::argmax_row(int state_index) const {
    const auto& row = rows_[static_cast<std::size_t>(state_index)];
    int best = row.front().first;
    double best_p = row.front().second;
    for (const auto& [dest, p] : row) {
        if (p > best_p) {
            best = dest;
            best_p = p;
        }
    }
    return best;
}

}  // namespace camsurv
