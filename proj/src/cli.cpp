#include "camsurv/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "camsurv/errors.hpp"
#include "camsurv/metrics.hpp"
#include "camsurv/planner.hpp"
#include "camsurv/scenario.hpp"
#include "camsurv/version.hpp"

namespace camsurv {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_out_dir() {
    const char* env = std::getenv("CAMSURV_OUT_DIR");
    return (env != nullptr && *env != '\0') ? env : ".";
}

std::string dash_join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += '-';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string obs_token(const Observation& z) {
    return z.is_null() ? "phi" : std::to_string(z.cell);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Runs tasks 0..count-1 on up to `jobs` threads. Exceptions are rethrown on
// the calling thread after all workers join.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

json base_doc(const char* type, const Scenario& sc) {
    json doc;
    doc["type"] = type;
    doc["scenario"] = sc.name;
    doc["scenario_hash"] = scenario_hash(sc);
    doc["version"] = version();
    return doc;
}

json summary_to_json(const MetricSummary& s, const Scenario& sc) {
    json doc = base_doc("summary", sc);
    doc["controller"] = s.controller;
    doc["seed"] = s.seed;
    doc["m_total"] = s.m_total;
    doc["tau"] = s.tau;
    doc["percent_obs"] = s.percent_obs;
    doc["per_step_obs"] = s.per_step_obs;
    doc["belief_conflicts"] = s.belief_conflicts;
    return doc;
}

// Top-K belief entries per target after each step, tab-separated.
class BeliefEmitter {
public:
    BeliefEmitter(const GridMap& map, const TransitionTable& table, int top_k)
        : map_(map), table_(table), top_k_(top_k) {
        out_ << "step\ttarget\trank\tstate\tcell\tdirection\tvelocity\tprob\n";
    }

    void capture(int step, const Controller& controller) {
        const JointBelief* B = controller.belief();
        if (B == nullptr) return;
        for (std::size_t k = 0; k < B->targets.size(); ++k) {
            const std::vector<double>& p = B->targets[k].probs;
            std::vector<int> idx(p.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            int keep = std::min<int>(top_k_, static_cast<int>(idx.size()));
            std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(), [&](int a, int b) {
                double pa = p[static_cast<std::size_t>(a)];
                double pb = p[static_cast<std::size_t>(b)];
                return pa != pb ? pa > pb : a < b;
            });
            for (int r = 0; r < keep; ++r) {
                int s = idx[static_cast<std::size_t>(r)];
                TargetState t = table_.state_at(s);
                out_ << step << '\t' << k << '\t' << r << '\t' << s << '\t' << t.location << '\t'
                     << t.direction << '\t' << t.velocity << '\t'
                     << fmt_double(p[static_cast<std::size_t>(s)]) << '\n';
            }
        }
    }

    std::string str() const { return out_.str(); }

private:
    const GridMap& map_;
    const TransitionTable& table_;
    int top_k_;
    std::ostringstream out_;
};

struct CommonFlags {
    std::string scenario_path;
    std::string out_dir = default_out_dir();
    int jobs = 1;
};

struct RunFlags : CommonFlags {
    std::string controller;
    int targets = -1;
    int steps = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> seed_tokens;
    bool emit_beliefs = false;
};

struct CompareFlags : CommonFlags {
    std::vector<int> targets;
    std::vector<std::string> seed_tokens;
    std::vector<std::string> controllers;
    int steps = -1;
};

struct BenchFlags : CommonFlags {
    std::vector<int> m_values{5, 10, 20, 40};
    int repeats = 11;
    bool stub_planner = false;
};

void validate_controller_name(const std::string& name) {
    for (std::string_view id : kControllerIds) {
        if (id == name) return;
    }
    std::string valid;
    for (std::string_view id : kControllerIds) {
        if (!valid.empty()) valid += ", ";
        valid += id;
    }
    throw ConfigError("unknown controller '" + name + "' (valid: " + valid + ")");
}

Scenario load_with_overrides(const std::string& path, const std::string& controller, int targets,
                             int steps) {
    Scenario sc = load_scenario(path);
    if (!controller.empty()) {
        validate_controller_name(controller);
        sc.controller.id = controller;
    }
    if (targets >= 0) {
        sc.targets = targets;
        sc.spawns.clear();
        if (!sc.initial_belief.uniform) {
            throw ConfigError("--targets cannot override a scenario with per-target initial beliefs");
        }
    }
    if (steps >= 0) sc.tau = steps;
    return sc;
}

std::string out_path(const CommonFlags& flags, const std::string& file) {
    fs::create_directories(flags.out_dir);
    return (fs::path(flags.out_dir) / file).string();
}

int cmd_run(const RunFlags& flags) {
    Scenario sc = load_with_overrides(flags.scenario_path, flags.controller, flags.targets,
                                      flags.steps);
    std::vector<std::uint64_t> seeds;
    if (!flags.seed_tokens.empty()) {
        if (flags.seed_set) throw ConfigError("--seed and --seeds are mutually exclusive");
        seeds = expand_seed_tokens(flags.seed_tokens);
    } else {
        seeds.push_back(flags.seed_set ? flags.seed : sc.seed);
    }

    TransitionTable table(sc.map, sc.motion);

    struct Result {
        MetricSummary summary;
        std::string record_tsv;
        std::string beliefs_tsv;  // empty when not captured
    };
    std::vector<Result> results(seeds.size());

    parallel_for(static_cast<int>(seeds.size()), flags.jobs, [&](int i) {
        Scenario run_sc = sc;
        run_sc.seed = seeds[static_cast<std::size_t>(i)];
        RunRecord record;
        Result& res = results[static_cast<std::size_t>(i)];
        if (flags.emit_beliefs) {
            BeliefEmitter emitter(run_sc.map, table, 5);
            record = run_scenario(run_sc, table,
                                  [&](int step, const Controller& c) { emitter.capture(step, c); });
            res.beliefs_tsv = emitter.str();
        } else {
            record = run_scenario(run_sc, table);
        }
        res.summary = summarize(record);
        res.record_tsv = run_record_tsv(record, run_sc);
    });

    std::string base = sc.name + "_" + sc.controller.id;
    int files = 0;
    std::vector<double> values;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Result& res = results[i];
        std::string seed_tag = "_seed" + std::to_string(seeds[i]);
        write_text_atomic(out_path(flags, base + seed_tag + ".run.tsv"), res.record_tsv);
        ++files;
        Scenario doc_sc = sc;
        doc_sc.seed = seeds[i];
        write_text_atomic(out_path(flags, base + seed_tag + ".summary.json"),
                          summary_to_json(res.summary, doc_sc).dump(1) + "\n");
        ++files;
        if (!res.beliefs_tsv.empty()) {
            write_text_atomic(out_path(flags, base + seed_tag + ".beliefs.tsv"), res.beliefs_tsv);
            ++files;
        }
        values.push_back(res.summary.percent_obs);
        std::cout << sc.name << " " << sc.controller.id << " seed=" << seeds[i]
                  << " m=" << sc.num_targets() << " tau=" << sc.tau
                  << " percent_obs=" << fmt_double(res.summary.percent_obs) << "\n";
    }

    if (seeds.size() > 1) {
        Aggregate agg = aggregate(values);
        json doc = base_doc("aggregate", sc);
        doc["controller"] = sc.controller.id;
        doc["m_total"] = sc.num_targets();
        doc["tau"] = sc.tau;
        doc["seeds"] = seeds;
        doc["percent_obs_values"] = values;
        doc["mean"] = agg.mean;
        doc["stddev"] = agg.stddev;
        doc["min"] = agg.min;
        doc["max"] = agg.max;
        write_text_atomic(out_path(flags, base + ".aggregate.json"), doc.dump(1) + "\n");
        ++files;
        std::cout << sc.name << " " << sc.controller.id << " aggregate mean="
                  << fmt_double(agg.mean) << " stddev=" << fmt_double(agg.stddev) << "\n";
    }

    std::cout << "wrote " << files << " file(s) to " << flags.out_dir << "\n";
    return 0;
}

int cmd_compare(const CompareFlags& flags) {
    Scenario sc = load_with_overrides(flags.scenario_path, "", -1, flags.steps);
    std::vector<int> m_values = flags.targets;
    if (m_values.empty()) m_values.push_back(sc.num_targets());
    std::vector<std::uint64_t> seeds = flags.seed_tokens.empty()
                                           ? std::vector<std::uint64_t>{sc.seed}
                                           : expand_seed_tokens(flags.seed_tokens);
    std::vector<std::string> controllers = flags.controllers;
    if (controllers.empty()) {
        controllers.assign(std::begin(kControllerIds), std::end(kControllerIds));
    }
    for (const std::string& c : controllers) validate_controller_name(c);
    for (int m : m_values) {
        if (m < 1) throw ConfigError("compare target counts must be >= 1");
    }

    TransitionTable table(sc.map, sc.motion);

    // task = one (m, seed) pair; the trajectory is generated once per task and
    // shared by every controller, which is what seed-matching means.
    int n_tasks = static_cast<int>(m_values.size() * seeds.size());
    std::vector<std::vector<double>> obs(static_cast<std::size_t>(n_tasks));
    parallel_for(n_tasks, flags.jobs, [&](int task) {
        int mi = task / static_cast<int>(seeds.size());
        int si = task % static_cast<int>(seeds.size());
        Scenario run_sc = sc;
        run_sc.targets = m_values[static_cast<std::size_t>(mi)];
        run_sc.spawns.clear();
        run_sc.seed = seeds[static_cast<std::size_t>(si)];
        Trajectory traj = make_trajectory(run_sc, table);
        std::vector<double>& row = obs[static_cast<std::size_t>(task)];
        for (const std::string& cname : controllers) {
            Scenario ctrl_sc = run_sc;
            ctrl_sc.controller.id = cname;
            Rng rng_ctrl = Rng(ctrl_sc.seed).child("ctrl");
            std::unique_ptr<Controller> controller = make_controller(ctrl_sc, table, rng_ctrl);
            RunRecord record = run_on_trajectory(ctrl_sc, *controller, traj);
            row.push_back(percent_obs(record));
        }
    });

    json doc = base_doc("compare", sc);
    doc["tau"] = sc.tau;
    doc["seeds"] = seeds;
    doc["m_values"] = m_values;
    json results = json::array();

    std::ostringstream tsv;
    tsv << "# scenario: " << sc.name << "\n";
    tsv << "# scenario_hash: " << scenario_hash(sc) << "\n";
    tsv << "# version: " << version() << "\n";
    tsv << "controller\tm\tmean_percent_obs\tstddev\tmin\tmax\tseeds\n";

    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        for (std::size_t ci = 0; ci < controllers.size(); ++ci) {
            std::vector<double> values;
            for (std::size_t si = 0; si < seeds.size(); ++si) {
                values.push_back(obs[mi * seeds.size() + si][ci]);
            }
            Aggregate agg = aggregate(values);
            json r;
            r["controller"] = controllers[ci];
            r["m"] = m_values[mi];
            r["per_seed"] = values;
            r["mean"] = agg.mean;
            r["stddev"] = agg.stddev;
            r["min"] = agg.min;
            r["max"] = agg.max;
            results.push_back(r);
            tsv << controllers[ci] << '\t' << m_values[mi] << '\t' << fmt_double(agg.mean) << '\t'
                << fmt_double(agg.stddev) << '\t' << fmt_double(agg.min) << '\t'
                << fmt_double(agg.max) << '\t' << seeds.size() << "\n";
            std::cout << "m=" << m_values[mi] << " " << controllers[ci]
                      << " mean_percent_obs=" << fmt_double(agg.mean) << "\n";
        }
    }
    doc["results"] = results;

    write_text_atomic(out_path(flags, sc.name + "_compare.tsv"), tsv.str());
    write_text_atomic(out_path(flags, sc.name + "_compare.json"), doc.dump(1) + "\n");
    std::cout << "wrote 2 file(s) to " << flags.out_dir << "\n";
    return 0;
}

int cmd_bench(const BenchFlags& flags) {
    Scenario sc = load_scenario(flags.scenario_path);
    TransitionTable table(sc.map, sc.motion);
    ScalingReport report = scaling_bench(sc, table, flags.m_values, flags.repeats,
                                         flags.stub_planner);

    json doc = base_doc("scaling", sc);
    doc["seed"] = sc.seed;
    doc["m_values"] = report.m_values;
    doc["median_runtime_s"] = report.median_runtime_s;
    doc["repeats"] = report.repeats;
    doc["slope"] = report.slope;
    doc["intercept"] = report.intercept;
    doc["r_squared"] = report.r_squared;
    doc["residuals"] = report.residuals;
    doc["stub_planner"] = flags.stub_planner;
    write_text_atomic(out_path(flags, sc.name + "_scaling.json"), doc.dump(1) + "\n");

    for (std::size_t i = 0; i < report.m_values.size(); ++i) {
        std::cout << "m=" << report.m_values[i]
                  << " median_runtime_s=" << fmt_double(report.median_runtime_s[i]) << "\n";
    }
    std::cout << "fit slope=" << fmt_double(report.slope)
              << " intercept=" << fmt_double(report.intercept)
              << " r_squared=" << fmt_double(report.r_squared) << "\n";
    std::cout << "wrote 1 file(s) to " << flags.out_dir << "\n";
    return 0;
}

}  // namespace

std::string run_record_tsv(const RunRecord& record, const Scenario& sc) {
    std::ostringstream out;
    out << "# scenario: " << sc.name << "\n";
    out << "# scenario_hash: " << scenario_hash(sc) << "\n";
    out << "# controller: " << record.controller << "\n";
    out << "# seed: " << record.seed << "\n";
    out << "# m_total: " << record.m_total << "\n";
    out << "# tau: " << record.tau << "\n";
    out << "# version: " << version() << "\n";
    out << "step\tcontroller\tcamera_state";
    for (int k = 0; k < record.m_total; ++k) {
        out << "\tt" << k << "_true\tt" << k << "_obs";
    }
    out << "\n";
    for (const StepRow& row : record.rows) {
        out << row.step << '\t' << record.controller << '\t' << dash_join(row.camera_state);
        for (int k = 0; k < record.m_total; ++k) {
            out << '\t' << row.true_cells[static_cast<std::size_t>(k)] << '\t'
                << obs_token(row.observations[static_cast<std::size_t>(k)]);
        }
        out << "\n";
    }
    out << "# M_obs";
    for (const StepRow& row : record.rows) out << '\t' << row.m_obs;
    out << "\n";
    out << "# belief_conflicts\t" << record.belief_conflicts << "\n";
    return out.str();
}

std::vector<std::uint64_t> expand_seed_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& token : tokens) {
        std::size_t dots = token.find("..");
        try {
            if (dots == std::string::npos) {
                seeds.push_back(std::stoull(token));
            } else {
                std::uint64_t lo = std::stoull(token.substr(0, dots));
                std::uint64_t hi = std::stoull(token.substr(dots + 2));
                if (hi < lo) throw ConfigError("seed range '" + token + "' is descending");
                if (hi - lo > 100000) throw ConfigError("seed range '" + token + "' is too large");
                for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad seed token '" + token + "' (expected N or A..B)");
        } catch (const std::out_of_range&) {
            throw ConfigError("seed token '" + token + "' out of range");
        }
    }
    if (seeds.empty()) throw ConfigError("empty seed list");
    return seeds;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw RuntimeError("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw RuntimeError("write to " + tmp + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw RuntimeError("atomic rename to " + path + " failed: " + ec.message());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"grid-world multi-camera target surveillance: planner, baselines, simulator"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "simulate a scenario and write run records");
    run->add_option("--scenario", run_flags.scenario_path, "scenario file")->required();
    run->add_option("--controller", run_flags.controller,
                    "controller override (pomdp, mp, msp, sys, stat)");
    run->add_option("--targets", run_flags.targets, "target count override");
    run->add_option("--steps", run_flags.steps, "step count override");
    CLI::Option* seed_opt = run->add_option_function<std::uint64_t>(
        "--seed",
        [&](std::uint64_t s) {
            run_flags.seed = s;
            run_flags.seed_set = true;
        },
        "seed override");
    run->add_option("--seeds", run_flags.seed_tokens, "seed list (tokens: N or A..B)")
        ->excludes(seed_opt);
    run->add_option("--out", run_flags.out_dir, "output directory (default $CAMSURV_OUT_DIR or .)");
    run->add_flag("--emit-beliefs", run_flags.emit_beliefs, "write top-5 belief rows per step");
    run->add_option("--jobs", run_flags.jobs, "parallel seed workers")->check(CLI::PositiveNumber);

    CompareFlags cmp_flags;
    CLI::App* cmp = app.add_subcommand(
        "compare", "run every controller on seed-matched trajectories and tabulate");
    cmp->add_option("--scenario", cmp_flags.scenario_path, "scenario file")->required();
    cmp->add_option("--targets", cmp_flags.targets, "target counts");
    cmp->add_option("--seeds", cmp_flags.seed_tokens, "seed list (tokens: N or A..B)");
    cmp->add_option("--controllers", cmp_flags.controllers, "controller subset (default: all)");
    cmp->add_option("--steps", cmp_flags.steps, "step count override");
    cmp->add_option("--out", cmp_flags.out_dir, "output directory (default $CAMSURV_OUT_DIR or .)");
    cmp->add_option("--jobs", cmp_flags.jobs, "parallel workers")->check(CLI::PositiveNumber);

    BenchFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "time action selection across target counts");
    bench->add_option("--scenario", bench_flags.scenario_path, "scenario file")->required();
    bench->add_option("--m-values", bench_flags.m_values, "target counts (default 5 10 20 40)");
    bench->add_option("--repeats", bench_flags.repeats, "timed repeats per target count")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--stub-planner", bench_flags.stub_planner,
                    "time a constant-work selection instead (flat control case)");
    bench->add_option("--out", bench_flags.out_dir,
                      "output directory (default $CAMSURV_OUT_DIR or .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (cmp->parsed()) return cmd_compare(cmp_flags);
        if (bench->parsed()) return cmd_bench(bench_flags);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace camsurv
