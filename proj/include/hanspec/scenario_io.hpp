#pragma once

#include <filesystem>
#include <string>

#include "hanspec/topology.hpp"

namespace hanspec {

// Scenario documents look like
//   {"side":10,"channels":2,"d_min":1,"d_max":4,
//    "primaries":[{"x":..,"y":..,"channel":0,"dp":2}],
//    "secondaries":[{"x":..,"y":..,"nan":0}],"seed":7}
// Unknown or missing fields are rejected.

std::string scenario_to_json(const Scenario& scn);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& scn, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace hanspec
