// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rklab/stability_polynomial.hpp"

namespace rklab::cli {

/// Usage errors carry the offending flag in the message; main maps them to
/// exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string method = "rk4";
  std::string op;
  std::map<std::string, double> op_params;  // N, a, dx, q, lam
  std::optional<double> dt;
  int n_max = 128;
  double threshold = 1e100;
  int angles = 720;
  int samples = 64;
  std::string mode = "standard";
  Bbox bbox{-4.0, 1.0, -3.0, 3.0};
  int nx = 201, ny = 201;
  double tol = 1e-12;
  std::string out;     // empty: JSON to stdout
  std::string format;  // "json" | "csv" | "" (infer from extension)
  std::string matrix_out;  // optional dense operator dump (re,im columns)
  std::string scenario_name;
  std::map<std::string, double> overrides;
  long long seed = 20240817;
  int pairs = 500;
};

/// Accepts plain decimals and simple fractions such as 1/6.
double parse_real(const std::string& text, const std::string& flag);

/// rk1..rk9 labels or a comma-separated coefficient list (fractions allowed).
StabilityPolynomial parse_method(const std::string& text);

/// Long-form flags only; validates per-command requirements and the
/// RKLAB_MAX_N dimension cap.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs the configured command.  Returns the process exit code: 0 on
/// success/pass, 1 on a failed verdict; numerical errors are thrown and
/// mapped to 3 by main.  Partial output files are removed on error.
int execute(const RunConfig& cfg);

std::string usage();

}  // namespace rklab::cli
