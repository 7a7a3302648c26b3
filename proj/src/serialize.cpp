// SPDX-License-Identifier: Apache-2.0

#include "rklab/serialize.hpp"

#include <cstdio>

namespace rklab {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string region_grid_csv(const RegionGrid& grid) {
  std::string out = "re,im,abs_p\n";
  for (int i = 0; i < grid.ny; ++i)
    for (int j = 0; j < grid.nx; ++j) {
      out += format_real(grid.re_at(j));
      out += ',';
      out += format_real(grid.im_at(i));
      out += ',';
      out += format_real(grid.at(i, j));
      out += '\n';
    }
  return out;
}

std::string range_boundary_csv(const RangeBoundary& rb) {
  std::string out = "theta,support,re_z,im_z\n";
  for (size_t k = 0; k < rb.angles.size(); ++k) {
    out += format_real(rb.angles[k]);
    out += ',';
    out += format_real(rb.support[k]);
    out += ',';
    out += format_real(rb.points[k].real());
    out += ',';
    out += format_real(rb.points[k].imag());
    out += '\n';
  }
  return out;
}

std::string growth_series_csv(const GrowthReport& report) {
  std::string out = "n,norm\n";
  for (size_t n = 0; n < report.norms.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_real(report.norms[n]);
    out += '\n';
  }
  return out;
}

nlohmann::json range_boundary_json(const RangeBoundary& rb, Eigen::Index n, double cond_h) {
  double radius = 0.0;
  for (double s : rb.support) radius = std::max(radius, s);
  nlohmann::json points = nlohmann::json::array();
  for (const auto& z : rb.points) points.push_back({z.real(), z.imag()});
  return {{"n", n}, {"cond_H", cond_h}, {"radius", radius}, {"points", points}};
}

nlohmann::json operator_descriptor_json(const OperatorMeta& meta) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : meta.params) params[key] = value;
  nlohmann::json out{{"label", meta.label}, {"params", params}};
  for (const auto& [key, value] : meta.params)
    if (key == "n" || key == "N") out["n"] = static_cast<long long>(value);
  return out;
}

std::string operator_matrix_csv(const ComplexMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_real(m(i, j).real());
      out += ',';
      out += format_real(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

nlohmann::json cfl_report_json(const CflReport& report) {
  nlohmann::json out{{"radius_required", report.radius_required},
                     {"radius_measured", report.radius_measured},
                     {"negative", report.negative},
                     {"boundary_inside", report.boundary_inside},
                     {"pass", report.pass},
                     {"route", report.route}};
  if (report.error) out["error"] = *report.error;
  return out;
}

nlohmann::json resolvent_report_json(const ResolventReport& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : report.samples)
    samples.push_back({{"re", s.z.real()},
                       {"im", s.z.imag()},
                       {"norm", s.resolvent_norm},
                       {"weight", s.weight}});
  return {{"mode", report.mode == ResolventMode::standard ? "standard" : "dissipative"},
          {"constant", report.constant},
          {"lower_bound", true},
          {"skipped", report.skipped},
          {"samples", samples}};
}

nlohmann::json growth_report_json(const GrowthReport& report) {
  nlohmann::json series{{"n", nlohmann::json::array()}, {"norm", nlohmann::json::array()}};
  for (size_t n = 0; n < report.norms.size(); ++n) {
    series["n"].push_back(n);
    series["norm"].push_back(report.norms[n]);
  }
  nlohmann::json out{{"sup_norm", report.sup_norm},
                     {"diverged", report.diverged},
                     {"truncated", report.truncated},
                     {"threshold", report.threshold},
                     {"series", series}};
  if (report.first_exceed) out["first_exceed"] = *report.first_exceed;
  return out;
}

}  // namespace rklab
