// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rklab {

/// One numbered claim of the reproduction suite, checked at desk scale.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst measured value against its bound
};

/// Runs the full reproduction suite (interval radii through
/// Lax-Wendroff).  Deterministic: all randomized sweeps are seeded.
std::vector<CriterionResult> verify_claims();

nlohmann::json criteria_json(const std::vector<CriterionResult>& results);

}  // namespace rklab
