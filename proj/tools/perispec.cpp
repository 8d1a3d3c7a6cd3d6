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

// Command-line front end.
//
//   perispec builtin <name> [--theta x] [--t x] --out file
//   perispec analyze --map file [--state file] [--check kind ...] [--out file]
//   perispec classify --map file --vector file --lambda-re x [--lambda-im x]
//   perispec check --map file --kind kind [--k n] [--trials n] [--seed n]
//
// Exit codes: 0 success / no violation; 1 a check found a violation;
// 2 bad arguments, schema violations, or zero vectors; 3 eigensolver
// failure; 4 the supplied vector is not an eigenvector; 5 the eigenvector
// does not fit any admissible singular pattern. Reports go to stdout,
// diagnostics to stderr.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perispec/perispec.hpp"

namespace {

using perispec::AnalysisOptions;
using perispec::CheckKind;
using perispec::CheckReport;
using perispec::Json;
using perispec::ToleranceSet;

void emit(const Json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    perispec::write_json_file(out_path, report);
  }
}

CheckKind parse_check_kind(const std::string& name) {
  if (name == "positivity") return CheckKind::kPositivity;
  if (name == "kpos") return CheckKind::kKPositivity;
  if (name == "cp") return CheckKind::kCpChoi;
  if (name == "schwarz") return CheckKind::kSchwarz;
  throw perispec::SchemaError("unknown check kind '" + name + "'");
}

perispec::State load_state_for(const perispec::BlockAlgebra& alg,
                               const std::string& path) {
  const Json j = perispec::read_json_file(path);
  if (j.is_object() && j.contains("state")) {
    return perispec::state_from_json(alg, j["state"]);
  }
  return perispec::state_from_json(alg, j);
}

int run(int argc, char** argv) {
  CLI::App app{"peripheral spectra of positive unital maps on block *-algebras"};
  app.require_subcommand(1);

  ToleranceSet tols;
  const auto add_tolerance_flags = [&tols](CLI::App* cmd) {
    cmd->add_option("--eps-peripheral", tols.eps_peripheral,
                    "unit-circle tolerance for peripheral eigenvalues");
    cmd->add_option("--cluster-tol", tols.cluster_tol,
                    "relative eigenvalue clustering tolerance");
    cmd->add_option("--eps-residual", tols.eps_residual,
                    "relative eigenvector residual tolerance");
    cmd->add_option("--psd-tol", tols.psd_tol, "positivity violation threshold");
    cmd->add_option("--nullspace-scale", tols.nullspace_scale,
                    "safety factor for null-space singular value thresholding");
  };

  // -- builtin ---------------------------------------------------------
  auto* cmd_builtin = app.add_subcommand("builtin", "write a ready-made system file");
  std::string builtin_name;
  std::optional<double> theta;
  std::optional<double> t_param;
  std::string out_path;
  cmd_builtin
      ->add_option("name", builtin_name,
                   "one of: example1, example1-continuous, example2, flip")
      ->required();
  cmd_builtin->add_option("--theta", theta, "phase of lambda0, radians");
  cmd_builtin->add_option("--t", t_param, "time parameter (example1-continuous only)");
  cmd_builtin->add_option("--out", out_path, "output file")->required();

  // -- analyze ---------------------------------------------------------
  auto* cmd_analyze = app.add_subcommand("analyze", "full spectral analysis");
  std::string map_path;
  std::string state_path;
  std::string analyze_out;
  std::vector<std::string> check_names;
  int k = 2;
  int trials = 1000;
  std::uint64_t seed = 42;
  cmd_analyze->add_option("--map", map_path, "system file")->required();
  cmd_analyze->add_option("--state", state_path, "state file overriding the system's");
  cmd_analyze->add_option("--out", analyze_out, "report file (stdout when absent)");
  cmd_analyze->add_option("--check", check_names,
                          "check batteries to run: positivity, kpos, cp, schwarz, all");
  cmd_analyze->add_option("--k", k, "ampliation order for kpos");
  cmd_analyze->add_option("--trials", trials, "sampling trials per check");
  cmd_analyze->add_option("--seed", seed, "sampling seed");
  add_tolerance_flags(cmd_analyze);

  // -- classify --------------------------------------------------------
  auto* cmd_classify = app.add_subcommand("classify", "classify a peripheral eigenvector");
  std::string classify_map;
  std::string vector_path;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  cmd_classify->add_option("--map", classify_map, "system file")->required();
  cmd_classify->add_option("--vector", vector_path, "element file")->required();
  cmd_classify->add_option("--lambda-re", lambda_re, "Re(lambda)")->required();
  cmd_classify->add_option("--lambda-im", lambda_im, "Im(lambda)");
  add_tolerance_flags(cmd_classify);

  // -- check -----------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "run one positivity check battery");
  std::string check_map;
  std::string check_kind;
  int check_k = 2;
  int check_trials = 1000;
  std::uint64_t check_seed = 42;
  double check_tol = 1e-10;
  cmd_check->add_option("--map", check_map, "system file")->required();
  cmd_check->add_option("--kind", check_kind, "positivity | kpos | cp | schwarz")
      ->required();
  cmd_check->add_option("--k", check_k, "ampliation order (kpos)");
  cmd_check->add_option("--trials", check_trials, "sampling trials");
  cmd_check->add_option("--seed", check_seed, "sampling seed");
  cmd_check->add_option("--tol", check_tol, "violation threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_builtin->parsed()) {
    perispec::BuiltSystem sys =
        perispec::detail::builtin_by_name(builtin_name, theta, t_param);
    if (!sys.warning.empty()) std::cerr << "warning: " << sys.warning << '\n';
    perispec::save_system(out_path, sys.map, &sys.state, sys.label);
    return 0;
  }

  if (cmd_analyze->parsed()) {
    perispec::SystemFile sys = perispec::load_system(map_path);
    if (!state_path.empty()) sys.state = load_state_for(sys.map.algebra(), state_path);
    AnalysisOptions opts;
    opts.tols = tols;
    opts.tols.validate();
    opts.k = k;
    opts.trials = trials;
    opts.seed = seed;
    for (const std::string& name : check_names) {
      if (name == "all") {
        opts.checks = {CheckKind::kPositivity, CheckKind::kKPositivity,
                       CheckKind::kCpChoi, CheckKind::kSchwarz};
        break;
      }
      opts.checks.push_back(parse_check_kind(name));
    }
    const perispec::State* state = sys.state.has_value() ? &*sys.state : nullptr;
    emit(perispec::run_analysis(sys.map, state, opts, sys.label), analyze_out);
    return 0;
  }

  if (cmd_classify->parsed()) {
    const perispec::SystemFile sys = perispec::load_system(classify_map);
    const perispec::AlgElement x = perispec::load_element(vector_path);
    tols.validate();
    const perispec::Classification c = perispec::classify_eigenvector(
        sys.map, perispec::Complex(lambda_re, lambda_im), x, tols);
    std::cout << perispec::to_json(c).dump(2) << '\n';
    return 0;
  }

  // check
  const perispec::SystemFile sys = perispec::load_system(check_map);
  CheckReport report;
  const CheckKind kind = parse_check_kind(check_kind);
  switch (kind) {
    case CheckKind::kPositivity:
      report = perispec::positivity_sample_test(sys.map, check_trials, check_seed,
                                                check_tol);
      break;
    case CheckKind::kKPositivity:
      report = perispec::k_positivity_test(sys.map, check_k, check_trials,
                                           check_seed, check_tol);
      break;
    case CheckKind::kCpChoi:
      report = perispec::cp_test(sys.map, check_tol, check_trials, check_seed);
      break;
    case CheckKind::kSchwarz:
      report = perispec::schwarz_violation_search(sys.map, check_trials, check_seed,
                                                  check_tol);
      break;
  }
  std::cout << perispec::to_json(report).dump(2) << '\n';
  return report.violations > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const perispec::PatternViolationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const perispec::NotAnEigenvectorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const perispec::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const perispec::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
