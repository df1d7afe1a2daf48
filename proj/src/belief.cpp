#include "camsurv/belief.hpp"

#include <string>

#include "camsurv/errors.hpp"

namespace camsurv {

double TargetBelief::sum() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

void TargetBelief::normalize() {
    double s = sum();
    if (s <= 0.0) throw RuntimeError("cannot normalize zero-mass belief");
    for (double& p : probs) p /= s;
}

std::vector<double> predict(const TargetBelief& b, const TransitionTable& table) {
    std::vector<double> out(b.probs.size(), 0.0);
    for (int t = 0; t < table.num_states(); ++t) {
        double bt = b.probs[static_cast<std::size_t>(t)];
        if (bt == 0.0) continue;
        for (const auto& [tp, p] : table.row(t)) {
            out[static_cast<std::size_t>(tp)] += p * bt;
        }
    }
    return out;
}

UpdateResult update(const TargetBelief& b, const TransitionTable& table, const Observation& z,
                    const FovView& fov) {
    std::vector<double> pred = predict(b, table);
    int block = table.states_per_location();

    // The likelihood depends on the state only through its location, which is
    // constant across each contiguous location block. Blocks are visited in
    // free-cell order so the evidence accumulates in a fixed order.
    TargetBelief post;
    post.probs.assign(pred.size(), 0.0);
    double evidence = 0.0;
    for (int li = 0; li < table.num_locations(); ++li) {
        double like = likelihood(z, table.location_cell(li), fov);
        if (like == 0.0) continue;
        int base = li * block;
        for (int s = base; s < base + block; ++s) {
            double w = like * pred[static_cast<std::size_t>(s)];
            post.probs[static_cast<std::size_t>(s)] = w;
            evidence += w;
        }
    }

    if (evidence <= 0.0) {
        throw BeliefConflictError(
            "observation " + (z.is_null() ? std::string("phi") : std::to_string(z.cell)) +
                " has zero evidence under the predicted belief",
            z.cell, -1);
    }
    for (double& p : post.probs) p /= evidence;
    return UpdateResult{std::move(post), evidence};
}

JointBelief joint_update(const JointBelief& B, const TransitionTable& table,
                         const std::vector<Observation>& Z, const JointAction& A,
                         const std::vector<CameraModel>& cams, const GridMap& map) {
    if (Z.size() != B.targets.size()) {
        throw ConfigError("joint_update: got " + std::to_string(Z.size()) + " observations for " +
                          std::to_string(B.targets.size()) + " targets");
    }
    JointBelief out;
    out.camera_state = apply_action(cams, B.camera_state, A);
    FovView fov = make_fov_view(map, cams, out.camera_state);
    out.targets.reserve(B.targets.size());
    for (std::size_t k = 0; k < B.targets.size(); ++k) {
        try {
            out.targets.push_back(update(B.targets[k], table, Z[k], fov).posterior);
        } catch (BeliefConflictError& e) {
            e.target_index = static_cast<int>(k);
            throw;
        }
    }
    return out;
}

TargetBelief initial_belief(const GridMap& map, const TransitionTable& table,
                            InitialBeliefMode mode, const TargetState& at) {
    TargetBelief b;
    b.probs.assign(static_cast<std::size_t>(table.num_states()), 0.0);
    if (mode == InitialBeliefMode::kUniform) {
        double p = 1.0 / static_cast<double>(table.num_states());
        for (double& x : b.probs) x = p;
    } else {
        if (at.location < 0 || at.location >= map.num_cells() || map.blocked(at.location)) {
            throw ConfigError("initial belief placed on blocked or out-of-range cell " +
                              std::to_string(at.location));
        }
        b.probs[static_cast<std::size_t>(table.index_of_state(at, map))] = 1.0;
    }
    return b;
}

}  // namespace camsurv
