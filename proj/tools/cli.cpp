// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "rklab/harness.hpp"
#include "rklab/scenarios.hpp"
#include "rklab/serialize.hpp"
#include "rklab/verification.hpp"

namespace rklab::cli {

namespace {

const std::set<std::string> kCommands{"region",    "numrange", "cfl",      "powers",
                                      "resolvent", "crouzeix", "scenario", "verify-paper"};

const std::set<std::string> kOperators{"jordan", "upwind", "centered", "centered4",
                                       "fe4",    "lw",     "var",      "fourier", "ibvp1"};

int max_dimension() {
  if (const char* env = std::getenv("RKLAB_MAX_N")) {
    const int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return 512;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

OperatorBundle build_operator(const RunConfig& cfg) {
  const auto& params = cfg.op_params;
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  const int n = static_cast<int>(get("N", 32));
  const double a = get("a", 1.0);
  const double dx = get("dx", 1.0 / n);
  const double q = get("q", 0.0);
  const double lam = get("lam", 1.0);

  if (cfg.op == "jordan") return jordan_block(n, q);
  if (cfg.op == "upwind") return forward_difference(n, a, dx);
  if (cfg.op == "centered") return centered_difference(n, a, dx);
  if (cfg.op == "centered4") return circulant(n, Stencil::centered4(a, dx));
  if (cfg.op == "fe4") return finite_element_4th(n, dx);
  if (cfg.op == "lw") return lax_wendroff(n, a, lam, dx);
  if (cfg.op == "var") {
    VariableStencil st;
    st.lo = 0;
    st.hi = 1;
    st.dx = 1.0 / n;
    auto speed = [](double x) { return 2.0 + std::sin(2.0 * M_PI * x); };
    st.coeff_fns = {[speed](double x) { return -speed(x); }, speed};
    return variable_circulant(n, st).bundle;
  }
  if (cfg.op == "fourier") {
    Eigen::VectorXd samples(2 * n + 1);
    for (int j = 0; j < 2 * n + 1; ++j) samples(j) = std::sin(2.0 * M_PI * j / (2 * n + 1));
    return fourier_method(n, samples);
  }
  if (cfg.op == "ibvp1") return ibvp_onesided(n, a, dx);
  throw UsageError("--op: unknown operator '" + cfg.op +
                   "' (registry: jordan, upwind, centered, centered4, fe4, lw, var, fourier, ibvp1)");
}

// Writes `content`, removing any partial file if the write fails.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw std::runtime_error("failed to write " + path);
  }
}

struct OutputGuard {
  std::string path;
  bool committed = false;
  ~OutputGuard() {
    if (!committed && !path.empty()) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
  }
};

std::string effective_format(const RunConfig& cfg, const std::string& fallback) {
  if (!cfg.format.empty()) return cfg.format;
  if (cfg.out.size() >= 4 && cfg.out.substr(cfg.out.size() - 4) == ".csv") return "csv";
  if (cfg.out.size() >= 5 && cfg.out.substr(cfg.out.size() - 5) == ".json") return "json";
  return fallback;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out, text);
}

}  // namespace

double parse_real(const std::string& text, const std::string& flag) {
  const auto fail = [&] { throw UsageError(flag + ": cannot parse number '" + text + "'"); };
  const size_t slash = text.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) fail();
      return v;
    }
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const double p = std::stod(num, &used);
    if (used != num.size()) fail();
    const double r = std::stod(den, &used);
    if (used != den.size() || r == 0.0) fail();
    return p / r;
  } catch (const std::logic_error&) {
    fail();
  }
  return 0.0;  // unreachable
}

StabilityPolynomial parse_method(const std::string& text) {
  if (text.size() == 3 && text.compare(0, 2, "rk") == 0 && text[2] >= '1' && text[2] <= '9')
    return StabilityPolynomial::taylor(text[2] - '0');
  if (text.find(',') == std::string::npos)
    throw UsageError("--method: unknown method '" + text +
                     "' (use rk1..rk9 or a comma-separated coefficient list)");
  std::vector<double> coeffs;
  for (const auto& part : split(text, ',')) coeffs.push_back(parse_real(part, "--method"));
  try {
    return StabilityPolynomial(coeffs, "custom");
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--method: ") + e.what());
  }
}

RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("missing command");
  RunConfig cfg;
  cfg.command = args[0];
  if (!kCommands.count(cfg.command)) throw UsageError("unknown command '" + cfg.command + "'");

  size_t i = 1;
  if (cfg.command == "scenario" && i < args.size() && args[i].rfind("--", 0) != 0)
    cfg.scenario_name = args[i++];

  auto next_value = [&](const std::string& flag) -> std::string {
    if (i + 1 >= args.size()) throw UsageError(flag + ": missing value");
    return args[++i];
  };

  for (; i < args.size(); ++i) {
    const std::string& flag = args[i];
    if (flag.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + flag + "'");
    if (flag == "--method") {
      cfg.method = next_value(flag);
    } else if (flag == "--op") {
      cfg.op = next_value(flag);
    } else if (flag == "--N" || flag == "--a" || flag == "--dx" || flag == "--q" ||
               flag == "--lam") {
      cfg.op_params[flag.substr(2)] = parse_real(next_value(flag), flag);
    } else if (flag == "--dt") {
      cfg.dt = parse_real(next_value(flag), flag);
    } else if (flag == "--nmax") {
      cfg.n_max = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--threshold") {
      cfg.threshold = parse_real(next_value(flag), flag);
    } else if (flag == "--m") {
      cfg.angles = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--samples") {
      cfg.samples = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--mode") {
      cfg.mode = next_value(flag);
      if (cfg.mode != "standard" && cfg.mode != "dissipative")
        throw UsageError("--mode: expected standard or dissipative");
    } else if (flag == "--bbox") {
      const auto parts = split(next_value(flag), ',');
      if (parts.size() != 4) throw UsageError("--bbox: expected re_min,re_max,im_min,im_max");
      cfg.bbox = {parse_real(parts[0], flag), parse_real(parts[1], flag),
                  parse_real(parts[2], flag), parse_real(parts[3], flag)};
    } else if (flag == "--nx") {
      cfg.nx = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--ny") {
      cfg.ny = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--tol") {
      cfg.tol = parse_real(next_value(flag), flag);
    } else if (flag == "--out") {
      cfg.out = next_value(flag);
    } else if (flag == "--matrix-out") {
      cfg.matrix_out = next_value(flag);
    } else if (flag == "--format") {
      cfg.format = next_value(flag);
      if (cfg.format != "json" && cfg.format != "csv")
        throw UsageError("--format: expected json or csv");
    } else if (flag == "--seed") {
      cfg.seed = static_cast<long long>(parse_real(next_value(flag), flag));
    } else if (flag == "--pairs") {
      cfg.pairs = static_cast<int>(parse_real(next_value(flag), flag));
    } else if (flag == "--set") {
      const auto kv = split(next_value(flag), '=');
      if (kv.size() != 2) throw UsageError("--set: expected key=value");
      cfg.overrides[kv[0]] = parse_real(kv[1], flag);
    } else if (flag == "--name") {
      cfg.scenario_name = next_value(flag);
    } else {
      throw UsageError("unknown flag '" + flag + "'");
    }
  }

  // per-command requirements
  const bool needs_op = cfg.command == "numrange" || cfg.command == "cfl" ||
                        cfg.command == "powers" || cfg.command == "resolvent";
  if (needs_op) {
    if (cfg.op.empty()) throw UsageError("--op: required for " + cfg.command);
    if (!kOperators.count(cfg.op))
      throw UsageError("--op: unknown operator '" + cfg.op +
                       "' (registry: jordan, upwind, centered, centered4, fe4, lw, var, fourier, ibvp1)");
  }
  if (cfg.command == "cfl" && !cfg.dt) throw UsageError("--dt: required for cfl");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw UsageError("--dt: must be positive");
  if (cfg.command == "scenario" && cfg.scenario_name.empty())
    throw UsageError("scenario: missing scenario name");
  if (cfg.n_max < 1) throw UsageError("--nmax: must be at least 1");
  const auto n_it = cfg.op_params.find("N");
  if (n_it != cfg.op_params.end()) {
    if (n_it->second < 1) throw UsageError("--N: must be at least 1");
    if (n_it->second > max_dimension())
      throw UsageError("--N: exceeds the dimension cap " + std::to_string(max_dimension()) +
                       " (override with RKLAB_MAX_N)");
  }
  return cfg;
}

namespace {

int run_region(const RunConfig& cfg) {
  const auto grid = region_grid(parse_method(cfg.method), cfg.bbox, cfg.nx, cfg.ny);
  if (effective_format(cfg, cfg.out.empty() ? "json" : "csv") == "csv") {
    emit(cfg, region_grid_csv(grid));
  } else {
    nlohmann::json j{{"command", "region"},
                     {"method", cfg.method},
                     {"bbox", {grid.box.re_min, grid.box.re_max, grid.box.im_min, grid.box.im_max}},
                     {"nx", grid.nx},
                     {"ny", grid.ny},
                     {"abs_p", grid.values}};
    emit(cfg, j.dump(2) + "\n");
  }
  std::cerr << "region: " << cfg.method << " on " << cfg.nx << "x" << cfg.ny << " grid\n";
  return 0;
}

int run_numrange(const RunConfig& cfg) {
  const auto op = build_operator(cfg);
  if (!cfg.matrix_out.empty()) write_file(cfg.matrix_out, operator_matrix_csv(op.matrix));
  const auto rb = range_boundary(op.matrix, op.symmetrizer, cfg.angles);
  if (effective_format(cfg, cfg.out.empty() ? "json" : "csv") == "csv") {
    emit(cfg, range_boundary_csv(rb));
  } else {
    nlohmann::json j = range_boundary_json(rb, op.matrix.rows(), op.symmetrizer.cond());
    j["operator"] = operator_descriptor_json(op.meta);
    emit(cfg, j.dump(2) + "\n");
  }
  std::cerr << "numrange: " << cfg.op << " with " << cfg.angles << " angles\n";
  return 0;
}

int run_cfl(const RunConfig& cfg) {
  const auto op = build_operator(cfg);
  const auto poly = parse_method(cfg.method);
  const auto report = verify_cfl(poly, *cfg.dt, op, std::max(cfg.angles, 64), cfg.tol);
  nlohmann::json j = cfl_report_json(report);
  j["command"] = "cfl";
  j["method"] = cfg.method;
  j["operator"] = operator_descriptor_json(op.meta);
  emit(cfg, j.dump(2) + "\n");
  std::cerr << "cfl: " << (report.pass ? "pass" : "fail") << " (route "
            << (report.route.empty() ? "none" : report.route)
            << ", dt*r_H = " << report.radius_measured << ", CFL_s = " << report.radius_required
            << ")\n";
  return report.pass ? 0 : 1;
}

int run_powers(const RunConfig& cfg) {
  const auto op = build_operator(cfg);
  const auto poly = parse_method(cfg.method);
  const ComplexMatrix iter = rk_matrix(poly, cfg.dt.value_or(1.0), op.matrix);
  const auto report = power_growth(iter, cfg.n_max, op.symmetrizer, cfg.threshold);
  if (effective_format(cfg, "json") == "csv") {
    emit(cfg, growth_series_csv(report));
  } else {
    nlohmann::json j = growth_report_json(report);
    j["command"] = "powers";
    j["method"] = cfg.method;
    j["operator"] = operator_descriptor_json(op.meta);
    emit(cfg, j.dump(2) + "\n");
  }
  std::cerr << "powers: sup ||P^n|| = " << report.sup_norm
            << (report.diverged ? " (diverged)" : "") << "\n";
  return 0;
}

int run_resolvent(const RunConfig& cfg) {
  const auto op = build_operator(cfg);
  const auto poly = parse_method(cfg.method);
  const ComplexMatrix iter = rk_matrix(poly, cfg.dt.value_or(1.0), op.matrix);
  const auto mode =
      cfg.mode == "dissipative" ? ResolventMode::dissipative : ResolventMode::standard;
  const auto report = resolvent_constant(iter, mode, std::max(cfg.samples, 16));
  nlohmann::json j = resolvent_report_json(report);
  j["command"] = "resolvent";
  j["method"] = cfg.method;
  j["operator"] = operator_descriptor_json(op.meta);
  emit(cfg, j.dump(2) + "\n");
  std::cerr << "resolvent: constant >= " << report.constant << " (" << cfg.mode << ")\n";
  return 0;
}

int run_crouzeix(const RunConfig& cfg) {
  const auto result = run_scenario(
      "crouzeix-sweep",
      {{"pairs", double(cfg.pairs)}, {"seed", double(cfg.seed)}, {"m", double(cfg.angles)}});
  emit(cfg, result.report.dump(2) + "\n");
  std::cerr << "crouzeix: " << (result.pass ? "pass" : "fail") << "\n";
  return result.pass ? 0 : 1;
}

int run_scenario_cmd(const RunConfig& cfg) {
  ScenarioResult result;
  try {
    result = run_scenario(cfg.scenario_name, cfg.overrides);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(cfg, result.report.dump(2) + "\n");
  // grids and boundaries land next to the JSON artifact
  if (!cfg.out.empty()) {
    const std::string stem = cfg.out.substr(0, cfg.out.rfind('.'));
    for (const auto& [suffix, grid] : result.grids)
      write_file(stem + "_" + suffix + ".csv", region_grid_csv(grid));
    for (const auto& [suffix, rb] : result.boundaries)
      write_file(stem + "_" + suffix + ".csv", range_boundary_csv(rb));
  }
  std::cerr << "scenario " << cfg.scenario_name << ": " << (result.pass ? "pass" : "fail")
            << "\n";
  return result.pass ? 0 : 1;
}

int run_verify_paper(const RunConfig& cfg) {
  const auto results = verify_claims();
  std::string table;
  bool all = true;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof(line), "%2d  %-42s %s  %s\n", r.id, r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.detail.c_str());
    table += line;
    all = all && r.pass;
  }
  table += all ? "verify-paper: all criteria passed\n" : "verify-paper: FAILURES above\n";
  if (cfg.out.empty()) {
    std::cout << table;
  } else {
    emit(cfg, criteria_json(results).dump(2) + "\n");
    std::cerr << table;
  }
  return all ? 0 : 1;
}

}  // namespace

int execute(const RunConfig& cfg) {
  OutputGuard guard{cfg.out};
  int code = 0;
  if (cfg.command == "region")
    code = run_region(cfg);
  else if (cfg.command == "numrange")
    code = run_numrange(cfg);
  else if (cfg.command == "cfl")
    code = run_cfl(cfg);
  else if (cfg.command == "powers")
    code = run_powers(cfg);
  else if (cfg.command == "resolvent")
    code = run_resolvent(cfg);
  else if (cfg.command == "crouzeix")
    code = run_crouzeix(cfg);
  else if (cfg.command == "scenario")
    code = run_scenario_cmd(cfg);
  else if (cfg.command == "verify-paper")
    code = run_verify_paper(cfg);
  else
    throw UsageError("unknown command '" + cfg.command + "'");
  guard.committed = true;
  return code;
}

std::string usage() {
  return
      "rklab - Runge-Kutta stability experiments on the numerical range\n"
      "\n"
      "usage: rklab <command> [--flag value ...]\n"
      "\n"
      "commands:\n"
      "  region        |P(z)| samples on a grid        (--method --bbox --nx --ny)\n"
      "  numrange      weighted numerical range        (--op --N ... --m)\n"
      "  cfl           CFL inclusion verdict           (--method --op --dt ...)\n"
      "  powers        power-boundedness run           (--method --op --dt --nmax)\n"
      "  resolvent     resolvent constant estimate     (--method --op --dt --mode --samples)\n"
      "  crouzeix      random spectral-set sweep       (--pairs --seed --m)\n"
      "  scenario      named experiment                (scenario <name> --set key=value)\n"
      "  verify-paper  full reproduction suite\n"
      "\n"
      "common flags: --method rk1..rk9 | a0,a1,...   --op jordan|upwind|centered|centered4|\n"
      "              fe4|lw|var|fourier|ibvp1        --N --a --dx --q --lam --dt --nmax\n"
      "              --out file --format json|csv --seed\n"
      "numbers accept decimals and fractions (1/6); dimension cap via RKLAB_MAX_N (default 512)\n";
}

}  // namespace rklab::cli
