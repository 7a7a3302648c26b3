// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using namespace rklab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// End-to-end runs go through the installed binary (path provided by ctest).
struct CliRunner {
  std::string bin;
  fs::path dir;

  CliRunner() {
    const char* env = std::getenv("RKLAB_CLI_BIN");
    bin = env ? env : "";
    dir = fs::temp_directory_path() / "rklab_cli_test";
    fs::create_directories(dir);
  }
  int run(const std::string& args) const {
    const std::string cmd = bin + " " + args + " >" + (dir / "stdout.txt").string() + " 2>" +
                            (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }
  std::string out() const { return slurp(dir / "stdout.txt"); }
};

}  // namespace

TEST_CASE("numbers parse as decimals and fractions") {
  CHECK(cli::parse_real("0.25", "--a") == 0.25);
  CHECK(cli::parse_real("1/6", "--a") == doctest::Approx(1.0 / 6.0));
  CHECK(cli::parse_real("-3/8", "--a") == doctest::Approx(-0.375));
  CHECK_THROWS_AS(cli::parse_real("abc", "--a"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_real("1/0", "--a"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_real("1.5x", "--a"), cli::UsageError);
}

TEST_CASE("methods parse as labels or coefficient lists") {
  CHECK(cli::parse_method("rk3").coeffs() == std::vector<double>{1.0, 1.0, 0.5, 1.0 / 6.0});
  const auto custom = cli::parse_method("1,1,1/2,1/6,1/24");
  CHECK(custom.degree() == 4);
  CHECK(custom.order() == 4);
  CHECK_THROWS_WITH_AS(cli::parse_method("euler"), doctest::Contains("rk1..rk9"),
                       cli::UsageError);
}

TEST_CASE("parse_args maps the spec command lines") {
  const auto region = cli::parse_args({"region", "--method", "rk4", "--bbox", "-4,1,-3,3",
                                       "--nx", "400", "--ny", "400", "--out", "a.csv"});
  CHECK(region.command == "region");
  CHECK(region.bbox.re_min == -4.0);
  CHECK(region.bbox.im_max == 3.0);
  CHECK(region.nx == 400);
  CHECK(region.out == "a.csv");

  const auto cfl = cli::parse_args({"cfl", "--method", "rk4", "--op", "upwind", "--N", "64",
                                    "--a", "1", "--dx", "0.015625", "--dt", "0.02"});
  CHECK(cfl.op == "upwind");
  CHECK(cfl.op_params.at("N") == 64.0);
  CHECK(cfl.dt == 0.02);

  const auto powers = cli::parse_args({"powers", "--method", "rk1", "--op", "jordan", "--q",
                                       "0.5", "--N", "64", "--nmax", "128"});
  CHECK(powers.op_params.at("q") == 0.5);
  CHECK(powers.n_max == 128);
}

TEST_CASE("usage errors name the offending flag") {
  CHECK_THROWS_WITH_AS(cli::parse_args({"cfl", "--method", "rk4", "--op", "upwind"}),
                       doctest::Contains("--dt"), cli::UsageError);
  CHECK_THROWS_WITH_AS(cli::parse_args({"powers", "--method", "rk1"}),
                       doctest::Contains("--op"), cli::UsageError);
  CHECK_THROWS_WITH_AS(
      cli::parse_args({"numrange", "--op", "warp", "--N", "8"}),
      doctest::Contains("jordan, upwind, centered, centered4, fe4, lw, var, fourier, ibvp1"),
      cli::UsageError);
  CHECK_THROWS_WITH_AS(cli::parse_args({"powers", "--op", "jordan", "--N", "100000"}),
                       doctest::Contains("RKLAB_MAX_N"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"frobnicate"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"scenario"}), cli::UsageError);
}

TEST_CASE("end-to-end command contract") {
  CliRunner cli;
  REQUIRE_FALSE(cli.bin.empty());

  SUBCASE("region writes the pinned CSV format") {
    const fs::path out = cli.dir / "grid.csv";
    CHECK(cli.run("region --method rk4 --bbox -4,1,-3,3 --nx 21 --ny 21 --out " +
                  out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("re,im,abs_p\n", 0) == 0);
    // row-major: second row stays on the first im line
    std::istringstream rows(csv);
    std::string header, r0, r1;
    std::getline(rows, header);
    std::getline(rows, r0);
    std::getline(rows, r1);
    CHECK(r0.rfind("-4,-3,", 0) == 0);
    CHECK(r1.rfind("-3.75,-3,", 0) == 0);
  }

  SUBCASE("numrange radius lands on cos(pi/9) for the 8x8 translation matrix") {
    const fs::path out = cli.dir / "range.json";
    const fs::path mat = cli.dir / "op.csv";
    CHECK(cli.run("numrange --op jordan --N 8 --m 256 --out " + out.string() +
                  " --matrix-out " + mat.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["radius"].get<double>() == doctest::Approx(std::cos(M_PI / 9.0)).epsilon(1e-10));
    CHECK(j["n"].get<int>() == 8);
    CHECK(j["points"].size() == 256);
    CHECK(slurp(mat).rfind("0,0,1,0,", 0) == 0);  // first row of J_0, re/im interleaved

    const fs::path csv = cli.dir / "range.csv";
    CHECK(cli.run("numrange --op jordan --N 8 --m 256 --out " + csv.string()) == 0);
    std::istringstream rows(slurp(csv));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "theta,support,re_z,im_z");
    double max_mod = 0.0;
    while (std::getline(rows, line)) {
      double theta, support, re, im;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &theta, &support, &re, &im) == 4);
      max_mod = std::max(max_mod, std::hypot(re, im));
    }
    CHECK(max_mod == doctest::Approx(std::cos(M_PI / 9.0)).epsilon(1e-8));
  }

  SUBCASE("cfl verdicts drive the exit code") {
    CHECK(cli.run("cfl --method rk4 --op upwind --N 32 --a 1 --dx 1/32 --dt 0.02") == 0);
    CHECK(cli.run("cfl --method rk1 --op centered --N 32 --a 1 --dx 1/32 --dt 0.01") == 1);
  }

  SUBCASE("scenario exit codes reflect verdicts") {
    CHECK(cli.run("scenario fe-stable --set N=48 --set nmax=96") == 0);
    CHECK(cli.run("scenario ssp-identity") == 0);
    // forcing the stable experiment past its CFL bound must not exit 0
    CHECK(cli.run("scenario fe-stable --set N=48 --set nmax=96 --set alam=1.5") == 1);
  }

  SUBCASE("usage errors exit 2") {
    CHECK(cli.run("cfl --method rk4 --op upwind") == 2);
    CHECK(cli.run("region --frobnicate 7") == 2);
  }

  SUBCASE("json output is deterministic byte for byte") {
    const fs::path out1 = cli.dir / "a.json", out2 = cli.dir / "b.json";
    const std::string args = "powers --method rk1 --op jordan --q -0.5 --N 24 --nmax 40 --out ";
    CHECK(cli.run(args + out1.string()) == 0);
    CHECK(cli.run(args + out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(nlohmann::json::parse(slurp(out1)).contains("sup_norm"));
  }

  SUBCASE("scenario artifacts land next to the report") {
    const fs::path out = cli.dir / "fig2.json";
    CHECK(cli.run("scenario fig2 --set nx=21 --set ny=21 --out " + out.string()) == 0);
    CHECK(fs::exists(cli.dir / "fig2_rk3.csv"));
    CHECK(fs::exists(cli.dir / "fig2_rk4.csv"));
    CHECK(nlohmann::json::parse(slurp(out))["pass"].get<bool>());
  }
}
