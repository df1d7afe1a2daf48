#include "camsurv/planner.hpp"

#include <cmath>
#include <string>

#include "camsurv/errors.hpp"
#include "camsurv/sensing.hpp"

namespace camsurv {

namespace {

// Sum of a state-space vector over the location block of free cell li.
double block_sum(const std::vector<double>& v, const TransitionTable& table, int li) {
    int block = table.states_per_location();
    int base = li * block;
    double s = 0.0;
    for (int i = base; i < base + block; ++i) s += v[static_cast<std::size_t>(i)];
    return s;
}

// Per-location block sums of a state-space vector, in free-cell order.
std::vector<double> location_marginal(const std::vector<double>& v, const TransitionTable& table) {
    std::vector<double> out(static_cast<std::size_t>(table.num_locations()));
    for (int li = 0; li < table.num_locations(); ++li) {
        out[static_cast<std::size_t>(li)] = block_sum(v, table, li);
    }
    return out;
}

// In-fov mass from precomputed per-location sums, accumulated over fov cells
// in ascending order. target_value and plan share this exact accumulation so
// their results are identical doubles, not merely close ones.
double fov_mass(const std::vector<double>& loc_marginal, const FovView& fov) {
    double s = 0.0;
    for (int li : fov.free_idx) s += loc_marginal[static_cast<std::size_t>(li)];
    return s;
}

}  // namespace

int reward_state(const TargetState& t, const FovView& fov) {
    return fov.contains(t.location) ? 1 : 0;
}

double reward_belief(const TargetBelief& b, const TransitionTable& table, const FovView& fov,
                     double reward_scale) {
    double s = 0.0;
    for (int li = 0; li < table.num_locations(); ++li) {
        if (fov.contains(table.location_cell(li))) s += block_sum(b.probs, table, li);
    }
    return reward_scale * s;
}

double target_value(const TargetBelief& b, const TransitionTable& table, const FovView& fov,
                    double reward_scale) {
    // Double sum over in-fov observation symbols and successor states of the
    // reward-weighted unnormalized posterior. An in-fov symbol matches exactly
    // the states of its own location block (likelihood one, reward one); every
    // other in-fov pairing contributes zero, and the null symbol earns no
    // reward. What survives is one block sum per fov cell.
    std::vector<double> pred = predict(b, table);
    return reward_scale * fov_mass(location_marginal(pred, table), fov);
}

double value(const JointBelief& B, const JointAction& A, const TransitionTable& table,
             const std::vector<CameraModel>& cams, const GridMap& map, const PlannerConfig& cfg) {
    JointCameraState next = apply_action(cams, B.camera_state, A);
    FovView fov = make_fov_view(map, cams, next);
    double total = 0.0;
    for (const TargetBelief& b : B.targets) total += target_value(b, table, fov, cfg.reward_scale);
    return total;
}

double value_bruteforce(const JointBelief& B, const JointAction& A, const TransitionTable& table,
                        const std::vector<CameraModel>& cams, const GridMap& map,
                        const PlannerConfig& cfg) {
    int m = static_cast<int>(B.targets.size());
    if (m == 0) return 0.0;
    int num_symbols = map.num_free() + 1;  // every free cell plus the null symbol

    double joint_count = std::pow(static_cast<double>(num_symbols), static_cast<double>(m));
    if (joint_count > static_cast<double>(cfg.max_enumeration)) {
        throw EnumerationLimitError("joint observation space of " + std::to_string(num_symbols) +
                                    "^" + std::to_string(m) + " exceeds the enumeration bound of " +
                                    std::to_string(cfg.max_enumeration));
    }

    JointCameraState next = apply_action(cams, B.camera_state, A);
    FovView fov = make_fov_view(map, cams, next);

    // Symbol s: 0 is the null observation, s >= 1 is free cell s-1.
    auto symbol_obs = [&](int s) {
        return s == 0 ? Observation::null() : Observation::at(map.free_cells()[static_cast<std::size_t>(s - 1)]);
    };

    // Per target and symbol: the probability of seeing that symbol next step,
    // and the posterior's expected reward given it. The symbol probability is
    // taken under the generative channel (the distribution the simulator's
    // sampler draws from), under which the per-target symbol probabilities sum
    // to one; the asymmetric null-case likelihood constant used by the belief
    // update cancels in posteriors but would leave this expectation
    // sub-normalized.
    std::vector<std::vector<double>> prob(static_cast<std::size_t>(m),
                                          std::vector<double>(static_cast<std::size_t>(num_symbols), 0.0));
    std::vector<std::vector<double>> post_reward(
        static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(num_symbols), 0.0));

    for (int k = 0; k < m; ++k) {
        std::vector<double> pred = predict(B.targets[k], table);
        double out_mass = 0.0;
        for (int li = 0; li < table.num_locations(); ++li) {
            double bs = block_sum(pred, table, li);
            if (fov.contains(table.location_cell(li))) {
                prob[static_cast<std::size_t>(k)][static_cast<std::size_t>(li + 1)] = bs;
            } else {
                out_mass += bs;
            }
        }
        prob[static_cast<std::size_t>(k)][0] = out_mass;

        for (int s = 0; s < num_symbols; ++s) {
            if (prob[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] <= 0.0) continue;
            UpdateResult u = update(B.targets[k], table, symbol_obs(s), fov);
            post_reward[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] =
                reward_belief(u.posterior, table, fov, cfg.reward_scale);
        }
    }

    // Odometer over all joint observations; zero-probability joints skipped.
    std::vector<int> Z(static_cast<std::size_t>(m), 0);
    double total = 0.0;
    while (true) {
        double p = 1.0;
        for (int k = 0; k < m && p > 0.0; ++k) {
            p *= prob[static_cast<std::size_t>(k)][static_cast<std::size_t>(Z[static_cast<std::size_t>(k)])];
        }
        if (p > 0.0) {
            double reward = 0.0;
            for (int k = 0; k < m; ++k) {
                reward += post_reward[static_cast<std::size_t>(k)][static_cast<std::size_t>(Z[static_cast<std::size_t>(k)])];
            }
            total += reward * p;
        }
        int pos = m - 1;
        while (pos >= 0 && Z[static_cast<std::size_t>(pos)] == num_symbols - 1) {
            Z[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++Z[static_cast<std::size_t>(pos)];
    }
    return total;
}

std::vector<JointAction> enumerate_actions(const std::vector<CameraModel>& cams) {
    std::vector<JointAction> out;
    std::size_t n = cams.size();
    JointAction A(n, 0);
    while (true) {
        out.push_back(A);
        std::size_t pos = n;
        while (pos > 0 && A[pos - 1] == cams[pos - 1].num_states() - 1) {
            A[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++A[pos - 1];
    }
    return out;
}

ValueReport plan(const JointBelief& B, const TransitionTable& table,
                 const std::vector<CameraModel>& cams, const GridMap& map,
                 const PlannerConfig& cfg) {
    // Predicted location marginals do not depend on the action, so they are
    // computed once per target; each action evaluation is then a sum over fov
    // cells per target. This is what keeps planning linear in the target count.
    std::vector<std::vector<double>> marginals;
    marginals.reserve(B.targets.size());
    for (const TargetBelief& b : B.targets) {
        marginals.push_back(location_marginal(predict(b, table), table));
    }

    ValueReport report;
    bool first = true;
    for (const JointAction& A : enumerate_actions(cams)) {
        FovView fov = make_fov_view(map, cams, apply_action(cams, B.camera_state, A));
        double v = 0.0;
        for (const std::vector<double>& marg : marginals) {
            v += cfg.reward_scale * fov_mass(marg, fov);
        }
        report.per_action_values.emplace_back(A, v);
        // Strictly-greater keeps the lexicographically smallest maximizer.
        if (first || v > report.best_value) {
            report.best_value = v;
            report.best_action = A;
            first = false;
        }
    }
    return report;
}

}  // namespace camsurv
