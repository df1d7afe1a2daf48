#pragma once

#include "camsurv/gridworld.hpp"
#include "camsurv/rand.hpp"

namespace camsurv {

// Per-target observation: a grid cell, or the null symbol when the target is
// in no camera's fov. Serialized in logs as the cell id or the token "phi".
struct Observation {
    static constexpr int kNull = -1;

    int cell = kNull;

    static Observation null() { return Observation{}; }
    static Observation at(int c) { return Observation{c}; }

    bool is_null() const { return cell == kNull; }
    bool operator==(const Observation&) const = default;
};

// Observation likelihood for one target given its true location and the joint
// camera configuration: 1 for the matching cell inside the fov, 1/|complement|
// for the null symbol outside the fov, 0 otherwise. Note the null case is a
// point value, not a distribution over null symbols; downstream users either
// renormalize (belief update) or sum only over in-fov symbols (value).
inline double likelihood(const Observation& z, int t_l, const FovView& fov) {
    bool inside = fov.contains(t_l);
    if (z.is_null()) {
        if (inside || fov.complement_size == 0) return 0.0;
        return 1.0 / static_cast<double>(fov.complement_size);
    }
    return (inside && z.cell == t_l) ? 1.0 : 0.0;
}

inline double likelihood(const Observation& z, int t_l, const GridMap& map,
                         const std::vector<CameraModel>& cams, const JointCameraState& C) {
    return likelihood(z, t_l, make_fov_view(map, cams, C));
}

// Generative counterpart: the exact cell inside the fov, null outside. The rng
// parameter keeps the signature uniform with the other samplers; the channel
// itself has no noise.
inline Observation sample_observation(int t_l, const FovView& fov, Rng& /*rng*/) {
    return fov.contains(t_l) ? Observation::at(t_l) : Observation::null();
}

}  // namespace camsurv
