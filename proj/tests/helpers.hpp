#pragma once

#include <string>

#include "camsurv/scenario.hpp"

namespace testutil {

inline std::string scenario_path(const std::string& name) {
    return std::string(CAMSURV_SCENARIO_DIR) + "/" + name + ".scn";
}

inline camsurv::Scenario load_fixture_scenario(const std::string& name) {
    return camsurv::load_scenario(scenario_path(name));
}

}  // namespace testutil
