// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "rklab/harness.hpp"
#include "rklab/numerical_range.hpp"
#include "rklab/operators.hpp"
#include "rklab/stability_polynomial.hpp"

namespace rklab {

/// Fixed 17-significant-digit decimal rendering, the round-trippable format
/// used by every CSV writer here.
std::string format_real(double v);

std::string region_grid_csv(const RegionGrid& grid);             // re,im,abs_p
std::string range_boundary_csv(const RangeBoundary& rb);         // theta,support,re_z,im_z
std::string growth_series_csv(const GrowthReport& report);       // n,norm

nlohmann::json range_boundary_json(const RangeBoundary& rb, Eigen::Index n, double cond_h);
nlohmann::json operator_descriptor_json(const OperatorMeta& meta);
std::string operator_matrix_csv(const ComplexMatrix& m);         // re,im interleaved columns

nlohmann::json cfl_report_json(const CflReport& report);
nlohmann::json resolvent_report_json(const ResolventReport& report);
nlohmann::json growth_report_json(const GrowthReport& report);

}  // namespace rklab
