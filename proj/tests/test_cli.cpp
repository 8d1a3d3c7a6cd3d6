// Copyright 2026 The perispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests of the installed command-line interface. The binary path
// is injected by the build as PERISPEC_CLI_PATH; every invocation goes
// through the shell, captures stdout/stderr, and reports the exit code.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "perispec/io.hpp"
#include "temp_files.hpp"

using namespace perispec;
using testutil::TempDir;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const TempDir& dir, const std::string& tag,
                  const std::string& args) {
  const std::string out_path = dir.file("stdout_" + tag + ".txt");
  const std::string err_path = dir.file("stderr_" + tag + ".txt");
  const std::string cmd = std::string(PERISPEC_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
  r.out = testutil::slurp(out_path);
  r.err = testutil::slurp(err_path);
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

TEST_CASE("builtin subcommand", "[cli]") {
  TempDir dir("cli_builtin");
  const double theta = 2.0 * std::numbers::pi / 5.0;

  SECTION("writes a loadable system file") {
    const std::string sys_path = dir.file("sys.json");
    const RunResult r = run_cli(
        dir, "ok", "builtin example1 --theta " + fmt(theta) + " --out " + sys_path);
    REQUIRE(r.code == 0);

    const SystemFile loaded = load_system(sys_path);
    CHECK(loaded.map.algebra() == BlockAlgebra({2}));
    CHECK((loaded.map.matrix() - example1(theta).map.matrix()).norm() == 0.0);
    REQUIRE(loaded.state.has_value());
  }

  SECTION("flip needs no parameters") {
    const std::string sys_path = dir.file("flip.json");
    const RunResult r = run_cli(dir, "flip", "builtin flip --out " + sys_path);
    REQUIRE(r.code == 0);
    const SystemFile loaded = load_system(sys_path);
    CHECK((loaded.map.matrix() - flip_map().map.matrix()).norm() == 0.0);
  }

  SECTION("the continuous family takes theta and t") {
    const std::string sys_path = dir.file("cont.json");
    const RunResult r =
        run_cli(dir, "cont",
                "builtin example1-continuous --theta " + fmt(theta) +
                    " --t 0.5 --out " + sys_path);
    REQUIRE(r.code == 0);
    const SystemFile loaded = load_system(sys_path);
    CHECK((loaded.map.matrix() - example1_continuous(theta, 0.5).matrix()).norm() ==
          0.0);
  }

  SECTION("bad requests exit with code 2") {
    const std::string f = dir.file("never.json");
    CHECK(run_cli(dir, "c2", "builtin example2-continuous --theta 1 --out " + f)
              .code == 2);
    CHECK(run_cli(dir, "missing_theta", "builtin example1 --out " + f).code == 2);
    CHECK(run_cli(dir, "unknown", "builtin example9 --theta 1 --out " + f).code == 2);
    CHECK(run_cli(dir, "no_out", "builtin example1 --theta 1").code == 2);
    CHECK(run_cli(dir, "no_sub", "").code == 2);
  }
}

TEST_CASE("analyze subcommand", "[cli]") {
  TempDir dir("cli_analyze");
  const double theta = 2.0 * std::numbers::pi / 5.0;
  const std::string sys_path = dir.file("sys.json");
  REQUIRE(run_cli(dir, "prep",
                  "builtin example1 --theta " + fmt(theta) + " --out " + sys_path)
              .code == 0);

  SECTION("produces a full report") {
    const std::string report_path = dir.file("report.json");
    const RunResult r = run_cli(dir, "full",
                                "analyze --map " + sys_path +
                                    " --check all --trials 50 --out " + report_path);
    REQUIRE(r.code == 0);

    const Json report = read_json_file(report_path);
    CHECK(report["spectrum"].size() == 4);
    CHECK(report["peripheral"].size() == 3);
    CHECK(report["ergodic"]["ergodic"] == true);
    CHECK(report["group_closure"]["is_group"] == false);
    CHECK(report["structure_tests"]["passed"] == true);
    REQUIRE(report["checks"].size() == 4);
  }

  SECTION("stdout output is byte-identical across reruns") {
    const std::string args =
        "analyze --map " + sys_path + " --check all --trials 30";
    const RunResult first = run_cli(dir, "rerun_a", args);
    const RunResult second = run_cli(dir, "rerun_b", args);
    REQUIRE(first.code == 0);
    REQUIRE(second.code == 0);
    CHECK_FALSE(first.out.empty());
    CHECK(first.out == second.out);
  }

  SECTION("missing files exit with code 2") {
    CHECK(run_cli(dir, "gone", "analyze --map " + dir.file("gone.json")).code == 2);
  }
}

TEST_CASE("classify subcommand", "[cli]") {
  TempDir dir("cli_classify");
  const double theta = 2.0 * std::numbers::pi / 5.0;
  const std::string sys_path = dir.file("sys.json");
  REQUIRE(run_cli(dir, "prep",
                  "builtin example1 --theta " + fmt(theta) + " --out " + sys_path)
              .code == 0);
  const BlockAlgebra a({2});
  const std::string lambda_args = " --lambda-re " + fmt(std::cos(theta)) +
                                  " --lambda-im " + fmt(std::sin(theta));

  SECTION("a corner unit is classified as a partial isometry") {
    const std::string vec_path = dir.file("e12.json");
    save_element(vec_path, oracle::unit(a, 0, 0, 1));
    const RunResult r = run_cli(
        dir, "e12",
        "classify --map " + sys_path + " --vector " + vec_path + lambda_args);
    REQUIRE(r.code == 0);
    const Json c = Json::parse(r.out);
    CHECK(c["case"] == "partial_isometry");
    CHECK(c["coefficients"].size() == 1);
  }

  SECTION("a non-eigenvector exits with code 4") {
    const std::string vec_path = dir.file("one.json");
    save_element(vec_path, AlgElement::identity(a));
    const RunResult r = run_cli(
        dir, "one",
        "classify --map " + sys_path + " --vector " + vec_path + lambda_args);
    CHECK(r.code == 4);
    CHECK_FALSE(r.err.empty());
  }

  SECTION("the zero vector exits with code 2") {
    const std::string vec_path = dir.file("zero.json");
    save_element(vec_path, AlgElement::zero(a));
    const RunResult r = run_cli(
        dir, "zero",
        "classify --map " + sys_path + " --vector " + vec_path + lambda_args);
    CHECK(r.code == 2);
  }

  SECTION("a pattern violation exits with code 5") {
    // Two independent copies of the rotation: still has (E12, 2 E12) as an
    // eigenvector at lambda0, but the theorem's pattern fails.
    const BlockAlgebra two({2, 2});
    Matrix s = Matrix::Zero(8, 8);
    s.topLeftCorner(4, 4) = example1(theta).map.matrix();
    s.bottomRightCorner(4, 4) = example1(theta).map.matrix();
    const std::string two_path = dir.file("two.json");
    save_system(two_path, SuperMap(two, s), nullptr, "two rotations");

    const std::string vec_path = dir.file("pair.json");
    save_element(vec_path,
                 oracle::unit(two, 0, 0, 1) + 2.0 * oracle::unit(two, 1, 0, 1));
    const RunResult r = run_cli(
        dir, "pattern",
        "classify --map " + two_path + " --vector " + vec_path + lambda_args);
    CHECK(r.code == 5);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("check subcommand", "[cli]") {
  TempDir dir("cli_check");
  const double theta = 2.0 * std::numbers::pi / 5.0;
  const std::string sys_path = dir.file("sys.json");
  REQUIRE(run_cli(dir, "prep",
                  "builtin example1 --theta " + fmt(theta) + " --out " + sys_path)
              .code == 0);

  SECTION("a found violation exits with code 1 and reports -1/2") {
    const RunResult r = run_cli(
        dir, "kpos",
        "check --map " + sys_path + " --kind kpos --k 2 --trials 1 --seed 42");
    CHECK(r.code == 1);
    const Json report = Json::parse(r.out);
    CHECK(report["kind"] == "k_positivity");
    CHECK(report["violations"] == 1);
    CHECK(report["first_violation_trial"] == 0);
    CHECK(report["worst_value"].get<double>() ==
          Catch::Approx(-0.5).margin(1e-9));
    CHECK(report["certifies"] == "refutation");
  }

  SECTION("a clean battery exits with code 0") {
    const RunResult r = run_cli(
        dir, "pos", "check --map " + sys_path + " --kind positivity --trials 200");
    CHECK(r.code == 0);
    const Json report = Json::parse(r.out);
    CHECK(report["violations"] == 0);
  }

  SECTION("the flip automorphism passes the Schwarz search") {
    const std::string flip_path = dir.file("flip.json");
    REQUIRE(run_cli(dir, "prep_flip", "builtin flip --out " + flip_path).code == 0);
    const RunResult r = run_cli(
        dir, "schwarz", "check --map " + flip_path + " --kind schwarz --trials 100");
    CHECK(r.code == 0);
  }

  SECTION("unknown kinds exit with code 2") {
    CHECK(run_cli(dir, "bad_kind",
                  "check --map " + sys_path + " --kind sobolev").code == 2);
  }
}
