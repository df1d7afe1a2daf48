#include "camsurv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "camsurv/errors.hpp"

namespace camsurv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& msg) {
    throw ConfigError(context + ": " + msg);
}

const json& require(const json& doc, const char* key, const std::string& context) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(context, std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T as(const json& v, const std::string& what) {
    try {
        return v.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

GridMap parse_map(const json& jmap, const std::string& ctx) {
    int width = as<int>(require(jmap, "width", ctx), ctx + ".width");
    int height = as<int>(require(jmap, "height", ctx), ctx + ".height");

    std::vector<int> blocked;
    bool have_blocked = jmap.contains("blocked");
    if (have_blocked) {
        blocked = as<std::vector<int>>(jmap["blocked"], ctx + ".blocked");
    }

    if (jmap.contains("ascii")) {
        auto rows = as<std::vector<std::string>>(jmap["ascii"], ctx + ".ascii");
        if (static_cast<int>(rows.size()) != height) {
            fail(ctx + ".ascii", "expected " + std::to_string(height) + " rows, got " +
                                     std::to_string(rows.size()));
        }
        std::vector<int> from_ascii;
        for (int y = 0; y < height; ++y) {
            const std::string& row = rows[static_cast<std::size_t>(y)];
            if (static_cast<int>(row.size()) != width) {
                fail(ctx + ".ascii", "row " + std::to_string(y) + " has width " +
                                         std::to_string(row.size()) + ", expected " +
                                         std::to_string(width));
            }
            for (int x = 0; x < width; ++x) {
                char c = row[static_cast<std::size_t>(x)];
                if (c == '#') {
                    from_ascii.push_back(y * width + x);
                } else if (c != '.') {
                    fail(ctx + ".ascii", std::string("unexpected character '") + c + "' at (" +
                                             std::to_string(x) + "," + std::to_string(y) + ")");
                }
            }
        }
        if (have_blocked) {
            std::vector<int> sorted_blocked = blocked;
            std::sort(sorted_blocked.begin(), sorted_blocked.end());
            if (sorted_blocked != from_ascii) {
                fail(ctx, "'blocked' list and 'ascii' art disagree about obstacle cells");
            }
        }
        blocked = std::move(from_ascii);
    } else if (!have_blocked) {
        blocked.clear();  // fully open map
    }

    try {
        return GridMap(width, height, blocked);
    } catch (const ConfigError& e) {
        fail(ctx, e.what());
    }
}

}  // namespace

int Scenario::nominal_velocity_index() const {
    for (std::size_t i = 0; i < motion.velocities.size(); ++i) {
        if (motion.velocities[i] == nominal_velocity) return static_cast<int>(i);
    }
    throw ConfigError("nominal_velocity " + std::to_string(nominal_velocity) +
                      " is not in motion.velocities");
}

Scenario scenario_from_json(const json& doc, const std::string& context) {
    Scenario sc;
    sc.name = doc.contains("name") ? as<std::string>(doc["name"], context + ".name") : "";
    sc.map = parse_map(require(doc, "map", context), context + ".map");

    const json& jcams = require(doc, "cameras", context);
    if (!jcams.is_array() || jcams.empty()) fail(context + ".cameras", "expected a non-empty array");
    int expected_id = 0;
    for (const json& jc : jcams) {
        std::string cctx = context + ".cameras[" + std::to_string(expected_id) + "]";
        CameraModel cam;
        cam.id = as<int>(require(jc, "id", cctx), cctx + ".id");
        if (cam.id != expected_id) {
            fail(cctx + ".id", "camera ids must be 0..n-1 in order; got " + std::to_string(cam.id));
        }
        const json& jstates = require(jc, "states", cctx);
        if (!jstates.is_array() || jstates.empty()) fail(cctx + ".states", "expected a non-empty array");
        for (const json& js : jstates) {
            auto fov = as<std::vector<int>>(require(js, "fov", cctx), cctx + ".fov");
            for (int cell : fov) {
                if (cell < 0 || cell >= sc.map.num_cells() || sc.map.blocked(cell)) {
                    fail(cctx, "fov cell " + std::to_string(cell) + " is not a free cell");
                }
            }
            std::sort(fov.begin(), fov.end());
            fov.erase(std::unique(fov.begin(), fov.end()), fov.end());
            cam.fov_by_state.push_back(std::move(fov));
        }
        sc.cameras.push_back(std::move(cam));
        ++expected_id;
    }

    if (doc.contains("motion")) {
        const json& jm = doc["motion"];
        std::string mctx = context + ".motion";
        if (jm.contains("sigma_d_deg")) sc.motion.sigma_d_deg = as<double>(jm["sigma_d_deg"], mctx);
        if (jm.contains("sigma_v")) sc.motion.sigma_v = as<double>(jm["sigma_v"], mctx);
        if (jm.contains("velocities")) sc.motion.velocities = as<std::vector<double>>(jm["velocities"], mctx);
        if (jm.contains("nominal_velocity")) sc.nominal_velocity = as<double>(jm["nominal_velocity"], mctx);
        try {
            sc.motion.validate();
        } catch (const ConfigError& e) {
            fail(mctx, e.what());
        }
    }

    if (doc.contains("controller")) {
        const json& jc = doc["controller"];
        std::string cctx = context + ".controller";
        if (jc.contains("id")) sc.controller.id = as<std::string>(jc["id"], cctx + ".id");
        if (jc.contains("msp")) {
            const json& jmsp = jc["msp"];
            if (jmsp.contains("sigma0")) sc.controller.msp.sigma0 = as<double>(jmsp["sigma0"], cctx);
            if (jmsp.contains("growth")) sc.controller.msp.growth = as<double>(jmsp["growth"], cctx);
            if (jmsp.contains("static_cell")) {
                const json& jcell = jmsp["static_cell"];
                if (jcell.is_array()) {
                    auto xy = as<std::vector<int>>(jcell, cctx + ".msp.static_cell");
                    if (xy.size() != 2) fail(cctx + ".msp.static_cell", "expected [x, y] or a cell id");
                    if (!sc.map.in_bounds(xy[0], xy[1])) {
                        fail(cctx + ".msp.static_cell", "cell (" + std::to_string(xy[0]) + "," +
                                                            std::to_string(xy[1]) + ") out of bounds");
                    }
                    sc.controller.msp.static_cell = sc.map.cell_at(xy[0], xy[1]);
                } else {
                    sc.controller.msp.static_cell = as<int>(jcell, cctx + ".msp.static_cell");
                }
            }
        }
        if (jc.contains("sys_phases")) {
            sc.controller.sys_phases = as<std::vector<int>>(jc["sys_phases"], cctx + ".sys_phases");
        }
        if (jc.contains("mp_staleness_cap")) {
            sc.controller.mp_staleness_cap = as<int>(jc["mp_staleness_cap"], cctx);
        }
    }

    bool known = false;
    for (std::string_view id : kControllerIds) known = known || id == sc.controller.id;
    if (!known) {
        std::string valid;
        for (std::string_view id : kControllerIds) {
            if (!valid.empty()) valid += ", ";
            valid += id;
        }
        fail(context + ".controller.id",
             "unknown controller '" + sc.controller.id + "' (valid: " + valid + ")");
    }
    if (!sc.controller.sys_phases.empty() &&
        sc.controller.sys_phases.size() != sc.cameras.size()) {
        fail(context + ".controller.sys_phases",
             "expected " + std::to_string(sc.cameras.size()) + " phases, got " +
                 std::to_string(sc.controller.sys_phases.size()));
    }
    if (sc.controller.msp.static_cell < 0 || sc.controller.msp.static_cell >= sc.map.num_cells() ||
        sc.map.blocked(sc.controller.msp.static_cell)) {
        fail(context + ".controller.msp.static_cell",
             "cell " + std::to_string(sc.controller.msp.static_cell) + " is not a free cell");
    }
    if (sc.controller.mp_staleness_cap < 0) {
        fail(context + ".controller.mp_staleness_cap", "must be >= 0 (0 = never drop)");
    }

    if (doc.contains("targets")) sc.targets = as<int>(doc["targets"], context + ".targets");
    if (sc.targets < 0) fail(context + ".targets", "must be >= 0");

    if (doc.contains("spawns")) {
        const json& jspawns = doc["spawns"];
        int i = 0;
        for (const json& js : jspawns) {
            std::string sctx = context + ".spawns[" + std::to_string(i) + "]";
            TargetState t;
            t.location = as<int>(require(js, "cell", sctx), sctx + ".cell");
            t.direction = as<int>(require(js, "direction", sctx), sctx + ".direction");
            t.velocity = as<int>(require(js, "velocity", sctx), sctx + ".velocity");
            if (t.location < 0 || t.location >= sc.map.num_cells() || sc.map.blocked(t.location)) {
                fail(sctx + ".cell", std::to_string(t.location) + " is not a free cell");
            }
            if (t.direction < 0 || t.direction >= kNumDirections) {
                fail(sctx + ".direction", "must be in 0..7");
            }
            if (t.velocity < 0 || t.velocity >= sc.motion.num_velocities()) {
                fail(sctx + ".velocity", "index " + std::to_string(t.velocity) +
                                             " out of range for the velocity set");
            }
            sc.spawns.push_back(t);
            ++i;
        }
    }

    if (doc.contains("tau")) sc.tau = as<int>(doc["tau"], context + ".tau");
    if (sc.tau < 0) fail(context + ".tau", "must be >= 0");
    if (doc.contains("seed")) sc.seed = as<std::uint64_t>(doc["seed"], context + ".seed");

    if (doc.contains("initial_belief")) {
        const json& jb = doc["initial_belief"];
        if (jb.is_string()) {
            if (jb.get<std::string>() != "uniform") {
                fail(context + ".initial_belief", "expected \"uniform\" or {\"at\": [...]}");
            }
        } else {
            sc.initial_belief.uniform = false;
            int i = 0;
            for (const json& js : require(jb, "at", context + ".initial_belief")) {
                std::string bctx = context + ".initial_belief.at[" + std::to_string(i) + "]";
                TargetState t;
                t.location = as<int>(require(js, "cell", bctx), bctx + ".cell");
                t.direction = as<int>(require(js, "direction", bctx), bctx + ".direction");
                t.velocity = as<int>(require(js, "velocity", bctx), bctx + ".velocity");
                if (t.location < 0 || t.location >= sc.map.num_cells() || sc.map.blocked(t.location)) {
                    fail(bctx + ".cell", std::to_string(t.location) + " is not a free cell");
                }
                sc.initial_belief.at.push_back(t);
                ++i;
            }
            if (static_cast<int>(sc.initial_belief.at.size()) != sc.num_targets()) {
                fail(context + ".initial_belief.at",
                     "expected one state per target (" + std::to_string(sc.num_targets()) + ")");
            }
        }
    }

    // Forces the membership check.
    (void)sc.nominal_velocity_index();

    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open scenario file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return scenario_from_json(doc, path);
}

nlohmann::json scenario_to_json(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    json jmap;
    jmap["width"] = sc.map.width();
    jmap["height"] = sc.map.height();
    std::vector<int> blocked;
    for (int cell = 0; cell < sc.map.num_cells(); ++cell) {
        if (sc.map.blocked(cell)) blocked.push_back(cell);
    }
    jmap["blocked"] = blocked;
    jmap["ascii"] = sc.map.ascii();
    doc["map"] = jmap;

    json jcams = json::array();
    for (const CameraModel& cam : sc.cameras) {
        json jc;
        jc["id"] = cam.id;
        json jstates = json::array();
        for (const auto& fov : cam.fov_by_state) jstates.push_back(json{{"fov", fov}});
        jc["states"] = jstates;
        jcams.push_back(jc);
    }
    doc["cameras"] = jcams;

    doc["motion"] = json{{"sigma_d_deg", sc.motion.sigma_d_deg},
                         {"sigma_v", sc.motion.sigma_v},
                         {"velocities", sc.motion.velocities},
                         {"nominal_velocity", sc.nominal_velocity}};

    json jctrl;
    jctrl["id"] = sc.controller.id;
    jctrl["msp"] = json{{"sigma0", sc.controller.msp.sigma0},
                        {"growth", sc.controller.msp.growth},
                        {"static_cell", sc.controller.msp.static_cell}};
    if (!sc.controller.sys_phases.empty()) jctrl["sys_phases"] = sc.controller.sys_phases;
    if (sc.controller.mp_staleness_cap != 0) jctrl["mp_staleness_cap"] = sc.controller.mp_staleness_cap;
    doc["controller"] = jctrl;

    doc["targets"] = sc.targets;
    if (!sc.spawns.empty()) {
        json jspawns = json::array();
        for (const TargetState& t : sc.spawns) {
            jspawns.push_back(json{{"cell", t.location}, {"direction", t.direction}, {"velocity", t.velocity}});
        }
        doc["spawns"] = jspawns;
    }
    doc["tau"] = sc.tau;
    doc["seed"] = sc.seed;
    if (sc.initial_belief.uniform) {
        doc["initial_belief"] = "uniform";
    } else {
        json jat = json::array();
        for (const TargetState& t : sc.initial_belief.at) {
            jat.push_back(json{{"cell", t.location}, {"direction", t.direction}, {"velocity", t.velocity}});
        }
        doc["initial_belief"] = json{{"at", jat}};
    }
    return doc;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : data) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string scenario_hash(const Scenario& sc) {
    json doc = scenario_to_json(sc);
    doc.erase("seed");
    doc["controller"].erase("id");
    std::uint64_t h = fnv1a64(doc.dump());
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace camsurv
