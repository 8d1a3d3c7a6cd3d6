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

// File format and machine-readable reports.
//
// A system file is a JSON object
//
//   {
//     "algebra": {"blocks": [n1, n2, ...]},
//     "map":     {"kind": "superoperator", "matrix": M}
//              | {"kind": "basis_images", "images": [element, ...]}
//              | {"kind": "builtin", "name": "...", "theta": x, "t": x},
//     "state":   {"density_blocks": [matrix, ...]},   // optional
//     "label":   "..."                                 // optional
//   }
//
// where a complex number is [re, im], a matrix is a row-major array of rows,
// an element is an array of per-block matrices, and superoperator columns
// follow the canonical vec order (per block, column-major). Doubles are
// serialized shortest-round-trip, so write/read/write is byte-stable.
//
// An element file is {"algebra": {...}, "element": [...]}.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "perispec/algebra.hpp"
#include "perispec/builders.hpp"
#include "perispec/checks.hpp"
#include "perispec/classify.hpp"
#include "perispec/errors.hpp"
#include "perispec/spectral.hpp"
#include "perispec/supermap.hpp"
#include "perispec/tolerances.hpp"

namespace perispec {

using Json = nlohmann::ordered_json;

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError("expected a complex number as [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw SchemaError("matrix has wrong row count");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw SchemaError("matrix has wrong column count");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[c]);
  }
  return m;
}

inline Json to_json(const BlockAlgebra& a) {
  return Json{{"blocks", a.block_sizes()}};
}

inline BlockAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array() ||
      j["blocks"].empty()) {
    throw SchemaError("algebra must be {\"blocks\": [n1, ...]} with at least one block");
  }
  std::vector<int> sizes;
  for (const Json& b : j["blocks"]) {
    if (!b.is_number_integer() || b.get<int>() < 1) {
      throw SchemaError("block sizes must be positive integers");
    }
    sizes.push_back(b.get<int>());
  }
  return BlockAlgebra(std::move(sizes));
}

inline Json to_json(const AlgElement& x) {
  Json blocks = Json::array();
  for (int i = 0; i < x.num_blocks(); ++i) blocks.push_back(to_json(x.block(i)));
  return blocks;
}

inline AlgElement element_from_json(const BlockAlgebra& a, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != a.num_blocks()) {
    throw SchemaError("element must list one matrix per block");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(a.num_blocks());
  for (int i = 0; i < a.num_blocks(); ++i) {
    blocks.push_back(matrix_from_json(j[i], a.block_size(i), a.block_size(i)));
  }
  return AlgElement(a, std::move(blocks));
}

inline Json to_json(const State& s) {
  Json blocks = Json::array();
  for (int i = 0; i < s.algebra().num_blocks(); ++i) {
    blocks.push_back(to_json(s.density_block(i)));
  }
  return Json{{"density_blocks", std::move(blocks)}};
}

inline State state_from_json(const BlockAlgebra& a, const Json& j) {
  if (!j.is_object() || !j.contains("density_blocks") || !j["density_blocks"].is_array() ||
      static_cast<int>(j["density_blocks"].size()) != a.num_blocks()) {
    throw SchemaError("state must be {\"density_blocks\": [one matrix per block]}");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(a.num_blocks());
  for (int i = 0; i < a.num_blocks(); ++i) {
    blocks.push_back(matrix_from_json(j["density_blocks"][i], a.block_size(i),
                                      a.block_size(i)));
  }
  try {
    return State(a, std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("invalid state: ") + e.what());
  }
}

struct SystemFile {
  SuperMap map;
  std::optional<State> state;
  std::string label;
};

namespace detail {

inline BuiltSystem builtin_by_name(const std::string& name,
                                   const std::optional<double>& theta,
                                   const std::optional<double>& t) {
  const auto need_theta = [&theta, &name]() {
    if (!theta) throw SchemaError("builtin '" + name + "' requires theta");
    return *theta;
  };
  if (name == "example1") return example1(need_theta());
  if (name == "example1-continuous") {
    if (!t) throw SchemaError("builtin 'example1-continuous' requires t");
    const double th = need_theta();
    SuperMap map = example1_continuous(th, *t);
    State state(map.algebra(), {0.5 * Matrix::Identity(2, 2)});
    std::ostringstream label;
    label.precision(12);
    label << "example1-continuous(theta=" << th << ", t=" << *t << ")";
    return BuiltSystem{std::move(map), std::move(state), label.str(), ""};
  }
  if (name == "example2") return example2(need_theta());
  if (name == "flip") return flip_map();
  if (name == "example2-continuous") {
    throw SchemaError(
        "example2-continuous is not provided: on a finite-dimensional abelian "
        "algebra, a continuous positive semigroup with peripheral spectrum "
        "{1,-1} would have to scale a hermitian unitary by a non-real phase at "
        "non-integer times, which no adjoint-preserving map can do; the "
        "discrete example2 is available instead");
  }
  throw SchemaError("unknown builtin '" + name + "'");
}

}  // namespace detail

inline SystemFile system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("map")) {
    throw SchemaError("system file must contain \"algebra\" and \"map\"");
  }
  const BlockAlgebra alg = algebra_from_json(j["algebra"]);
  const Json& jm = j["map"];
  if (!jm.is_object() || !jm.contains("kind") || !jm["kind"].is_string()) {
    throw SchemaError("map must be an object with a \"kind\"");
  }
  const std::string kind = jm["kind"].get<std::string>();

  std::optional<SuperMap> map;
  std::optional<State> state;
  std::string label = j.value("label", std::string());

  if (kind == "superoperator") {
    if (!jm.contains("matrix")) throw SchemaError("superoperator map needs \"matrix\"");
    map.emplace(alg, matrix_from_json(jm["matrix"], alg.dim(), alg.dim()));
  } else if (kind == "basis_images") {
    if (!jm.contains("images") || !jm["images"].is_array() ||
        static_cast<int>(jm["images"].size()) != alg.dim()) {
      throw SchemaError("basis_images map needs one image per canonical basis element");
    }
    std::vector<AlgElement> images;
    images.reserve(alg.dim());
    for (const Json& ji : jm["images"]) images.push_back(element_from_json(alg, ji));
    map.emplace(SuperMap::from_basis_images(alg, images));
  } else if (kind == "builtin") {
    if (!jm.contains("name") || !jm["name"].is_string()) {
      throw SchemaError("builtin map needs a \"name\"");
    }
    std::optional<double> theta;
    std::optional<double> t;
    if (jm.contains("theta")) theta = jm["theta"].get<double>();
    if (jm.contains("t")) t = jm["t"].get<double>();
    BuiltSystem sys = detail::builtin_by_name(jm["name"].get<std::string>(), theta, t);
    if (sys.map.algebra() != alg) {
      throw SchemaError("declared algebra does not match the builtin's algebra");
    }
    if (label.empty()) label = sys.label;
    state = std::move(sys.state);
    map.emplace(std::move(sys.map));
  } else {
    throw SchemaError("unknown map kind '" + kind + "'");
  }

  if (j.contains("state")) state = state_from_json(alg, j["state"]);
  return SystemFile{std::move(*map), std::move(state), std::move(label)};
}

inline Json to_json(const SuperMap& map, const State* state = nullptr,
                    const std::string& label = "") {
  Json j;
  j["algebra"] = to_json(map.algebra());
  j["map"] = Json{{"kind", "superoperator"}, {"matrix", to_json(map.matrix())}};
  if (state != nullptr) j["state"] = to_json(*state);
  if (!label.empty()) j["label"] = label;
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline SystemFile load_system(const std::string& path) {
  return system_from_json(read_json_file(path));
}

inline void save_system(const std::string& path, const SuperMap& map,
                        const State* state = nullptr, const std::string& label = "") {
  write_json_file(path, to_json(map, state, label));
}

inline AlgElement element_from_file(const Json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("element")) {
    throw SchemaError("element file must contain \"algebra\" and \"element\"");
  }
  const BlockAlgebra alg = algebra_from_json(j["algebra"]);
  return element_from_json(alg, j["element"]);
}

inline AlgElement load_element(const std::string& path) {
  return element_from_file(read_json_file(path));
}

inline void save_element(const std::string& path, const AlgElement& x) {
  Json j;
  j["algebra"] = to_json(x.algebra());
  j["element"] = to_json(x);
  write_json_file(path, j);
}

// ---------------------------------------------------------------------------
// Report builders. Every floating-point value is serialized at full
// precision, so identical inputs and seeds give byte-identical reports.

inline Json to_json(const ToleranceSet& tols) {
  return Json{{"eps_peripheral", tols.eps_peripheral},
              {"cluster_tol", tols.cluster_tol},
              {"eps_residual", tols.eps_residual},
              {"psd_tol", tols.psd_tol},
              {"nullspace_scale", tols.nullspace_scale}};
}

inline Json to_json(const MapFlags& f) {
  Json j{{"unital", f.unital}, {"adjoint_preserving", f.adjoint_preserving}};
  if (f.state_invariant.has_value()) {
    j["state_invariant"] = *f.state_invariant;
  } else {
    j["state_invariant"] = nullptr;
  }
  return j;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["kind"] = check_kind_name(r.kind);
  if (r.kind == CheckKind::kKPositivity) j["k"] = r.k;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["worst_value"] = r.worst_value;
  j["first_violation_trial"] = r.first_violation_trial;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["certifies"] = r.certifies;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness.has_value()) j["witness"] = to_json(*r.witness);
  return j;
}

inline Json to_json(const Classification& c) {
  Json j;
  j["case"] = theorem_case_name(c.theorem_case);
  j["lambda"] = to_json(c.lambda);
  j["coefficients"] = c.coefficients;
  Json ws = Json::array();
  for (const AlgElement& w : c.witnesses) ws.push_back(to_json(w));
  j["witnesses"] = std::move(ws);
  if (c.e.has_value()) j["e"] = to_json(*c.e);
  if (c.e_perp.has_value()) j["e_perp"] = to_json(*c.e_perp);
  Json res = Json::object();
  for (const auto& [label, r] : c.identity_residuals) res[label] = r;
  j["identity_residuals"] = std::move(res);
  j["max_residual"] = c.max_residual;
  return j;
}

inline Json to_json(const StructureTestReport& r) {
  Json j;
  j["max_adjoint_residual"] = r.max_adjoint_residual;
  j["max_jordan_residual"] = r.max_jordan_residual;
  Json fails = Json::array();
  for (const StructureTestFailure& f : r.failures) {
    fails.push_back(Json{{"relation", f.relation},
                         {"lambda1", to_json(f.lambda1)},
                         {"lambda2", to_json(f.lambda2)},
                         {"residual", f.residual}});
  }
  j["failures"] = std::move(fails);
  j["passed"] = r.passed;
  return j;
}

struct AnalysisOptions {
  ToleranceSet tols;
  std::vector<CheckKind> checks;
  int k = 2;
  int trials = 1000;
  std::uint64_t seed = 42;
};

// Full pipeline: flags, spectrum, peripheral eigenspaces with per-vector
// classification (only attempted when the map is ergodic — the trichotomy
// presupposes it), ergodicity, group closure, structure tests, and any
// requested check batteries. Classification pattern violations are recorded
// in the report rather than thrown.
inline Json run_analysis(const SuperMap& map, const State* state,
                         const AnalysisOptions& opts, const std::string& label = "") {
  Json report;
  report["input"] =
      Json{{"label", label}, {"algebra", to_json(map.algebra())}};
  report["tolerances"] = to_json(opts.tols);
  report["map_flags"] = to_json(map_flags(map, state));

  const SpectralData data = eigendecompose(map, opts.tols);
  const ErgodicityVerdict erg = is_ergodic(data, opts.tols.eps_peripheral);

  Json spectrum = Json::array();
  for (const EigenCluster& c : data.eigenclusters) {
    spectrum.push_back(Json{{"value", to_json(c.value)},
                            {"algebraic_multiplicity", c.algebraic_multiplicity},
                            {"geometric_multiplicity", c.geometric_multiplicity()}});
  }
  report["spectrum"] = std::move(spectrum);
  report["warnings"] = data.warnings;

  Json peripheral = Json::array();
  for (const auto& [value, mult] : peripheral_point_spectrum(data)) {
    // Locate the cluster again to reach its basis.
    const EigenCluster* cluster = nullptr;
    for (int idx : data.peripheral) {
      if (std::abs(data.eigenclusters[idx].value - value) == 0.0) {
        cluster = &data.eigenclusters[idx];
      }
    }
    Json entry;
    entry["value"] = to_json(value);
    entry["multiplicity"] = mult;
    Json basis = Json::array();
    Json classifications = Json::array();
    for (const AlgElement& b : cluster->basis) {
      basis.push_back(to_json(b));
      if (!erg.ergodic) continue;
      try {
        classifications.push_back(to_json(classify_eigenvector(map, value, b, opts.tols)));
      } catch (const PatternViolationError& e) {
        classifications.push_back(Json{{"error", "pattern_violation"},
                                       {"message", e.what()},
                                       {"cluster_values", e.cluster_values()}});
      } catch (const NotAnEigenvectorError& e) {
        classifications.push_back(Json{{"error", "not_an_eigenvector"},
                                       {"message", e.what()},
                                       {"residual", e.residual()}});
      }
    }
    entry["basis"] = std::move(basis);
    if (erg.ergodic) entry["classifications"] = std::move(classifications);
    peripheral.push_back(std::move(entry));
  }
  report["peripheral"] = std::move(peripheral);
  report["ergodic"] = Json{{"ergodic", erg.ergodic}, {"fixed_dim", erg.fixed_dim}};

  if (!data.peripheral.empty()) {
    std::vector<Complex> values;
    for (const auto& [value, mult] : peripheral_point_spectrum(data)) {
      values.push_back(value);
    }
    const GroupClosureVerdict g = group_closure(values, opts.tols.eps_peripheral);
    Json missing = Json::array();
    for (const auto& [a, b] : g.missing) {
      missing.push_back(Json::array({to_json(a), to_json(b)}));
    }
    report["group_closure"] = Json{{"is_group", g.is_group},
                                   {"has_unit", g.has_unit},
                                   {"conjugation_closed", g.conjugation_closed},
                                   {"missing", std::move(missing)}};
  } else {
    report["group_closure"] = nullptr;
  }

  report["structure_tests"] =
      to_json(peripheral_structure_tests(map, data, opts.tols.eps_peripheral));

  if (!opts.checks.empty()) {
    Json checks = Json::array();
    for (CheckKind kind : opts.checks) {
      switch (kind) {
        case CheckKind::kPositivity:
          checks.push_back(to_json(
              positivity_sample_test(map, opts.trials, opts.seed, opts.tols.psd_tol)));
          break;
        case CheckKind::kKPositivity:
          checks.push_back(to_json(k_positivity_test(map, opts.k, opts.trials,
                                                     opts.seed, opts.tols.psd_tol)));
          break;
        case CheckKind::kCpChoi:
          checks.push_back(
              to_json(cp_test(map, opts.tols.psd_tol, opts.trials, opts.seed)));
          break;
        case CheckKind::kSchwarz:
          checks.push_back(to_json(schwarz_violation_search(map, opts.trials,
                                                            opts.seed,
                                                            opts.tols.psd_tol)));
          break;
      }
    }
    report["checks"] = std::move(checks);
  }
  return report;
}

}  // namespace perispec
