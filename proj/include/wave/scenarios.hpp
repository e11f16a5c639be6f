// Named initial-data builders with documented defaults. Every scenario
// produces sampled data plus, where a closed form exists, exact evaluators
// for the profile and its slope.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "wave/grid.hpp"
#include "wave/lagrangian.hpp"

namespace wave {

struct ScenarioParam {
    std::string name;
    double value;  // default
    std::string doc;
};

struct ScenarioInfo {
    std::string name;
    std::string doc;
    std::vector<ScenarioParam> params;
    std::vector<std::string> aliases;
    bool lagrangian_only = false;  // true when the default parameters give kinked data
};

// The registry, fixed order (listed by `wave scenarios`).
const std::vector<ScenarioInfo>& scenario_library();

// Resolves aliases; throws on unknown names. The returned info carries the
// canonical name.
const ScenarioInfo& scenario_info(const std::string& name);

// Builds initial data on the grid. Unknown parameter names throw; omitted
// parameters take their documented defaults.
InitialData make_scenario(const std::string& name,
                          const std::map<std::string, double>& params,
                          const UniformGrid& x_grid);

}  // namespace wave
