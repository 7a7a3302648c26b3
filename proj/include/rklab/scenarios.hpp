// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rklab/harness.hpp"

namespace rklab {

struct Verdict {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
};

nlohmann::json verdict_json(const Verdict& v);

/// Output of one registered experiment: the JSON report plus any CSV-able
/// artifacts (named by suffix so the caller can derive file names).
struct ScenarioResult {
  nlohmann::json report;
  std::vector<std::pair<std::string, RegionGrid>> grids;
  std::vector<std::pair<std::string, RangeBoundary>> boundaries;
  bool pass = false;
};

const std::vector<std::string>& scenario_names();

/// Runs a named experiment with its documented defaults; `overrides` replaces selected
/// numeric parameters (unknown names are rejected listing the valid keys).
/// Throws UnknownScenario for names outside the registry.
ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, double>& overrides = {});

}  // namespace rklab
