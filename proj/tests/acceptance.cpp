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

// Acceptance battery: the headline numerical claims of the library, one
// self-contained criterion per function, one PASS/FAIL line each. The exit
// code is the number of failed criteria, so `ctest` treats any failure as a
// test failure.

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "perispec/perispec.hpp"

using namespace perispec;

namespace {

constexpr double kTheta = 2.0 * std::numbers::pi / 5.0;

struct Criterion {
  std::string name;
  bool (*check)();
};

// --- small shared helpers --------------------------------------------------

double span_distance(const AlgElement& y, const std::vector<AlgElement>& basis) {
  AlgElement rest = y;
  for (const AlgElement& b : basis) rest = rest - hs_inner(b, y) * b;
  return rest.norm();
}

const EigenCluster* cluster_at(const SpectralData& data, Complex value,
                               double tol = 1e-8) {
  for (int idx : data.peripheral) {
    if (std::abs(data.eigenclusters[idx].value - value) <= tol) {
      return &data.eigenclusters[idx];
    }
  }
  return nullptr;
}

bool spectrum_matches(const std::vector<std::pair<Complex, int>>& got,
                      const std::vector<std::pair<Complex, int>>& want,
                      double tol = 1e-8) {
  if (got.size() != want.size()) return false;
  for (const auto& [wv, wm] : want) {
    bool found = false;
    for (const auto& [gv, gm] : got) {
      if (std::abs(gv - wv) <= tol && gm == wm) found = true;
    }
    if (!found) return false;
  }
  return true;
}

// --- criteria ----------------------------------------------------------------

// Generic-phase rotation: three peripheral points, ergodic, and the
// peripheral set is not closed under products (lambda0^2 is missing).
bool criterion1() {
  const Complex lam = std::polar(1.0, kTheta);
  const SpectralData data = eigendecompose(example1(kTheta).map);
  const auto spectrum = peripheral_point_spectrum(data);
  if (!spectrum_matches(spectrum, {{Complex(1.0, 0.0), 1},
                                   {lam, 1},
                                   {std::conj(lam), 1}})) {
    return false;
  }
  if (!is_ergodic(data).ergodic) return false;

  std::vector<Complex> values;
  for (const auto& [v, m] : spectrum) values.push_back(v);
  const GroupClosureVerdict g = group_closure(values);
  if (g.is_group) return false;
  for (const auto& [x, y] : g.missing) {
    if (std::abs(x - lam) <= 1e-8 && std::abs(y - lam) <= 1e-8) return true;
  }
  return false;
}

// lambda0 = -1: the eigenspace at -1 is two-dimensional and is exactly the
// antidiagonal matrices.
bool criterion2() {
  const SpectralData data = eigendecompose(example1(std::numbers::pi).map);
  const auto spectrum = peripheral_point_spectrum(data);
  if (!spectrum_matches(spectrum,
                        {{Complex(1.0, 0.0), 1}, {Complex(-1.0, 0.0), 2}})) {
    return false;
  }
  const EigenCluster* m = cluster_at(data, Complex(-1.0, 0.0));
  if (m == nullptr || m->geometric_multiplicity() != 2) return false;

  const BlockAlgebra& alg = data.algebra;
  const AlgElement e12 = oracle::unit(alg, 0, 0, 1);
  const AlgElement e21 = oracle::unit(alg, 0, 1, 0);
  // Both antidiagonal units lie in the eigenspace, and every basis vector
  // lies back in their span: the two spaces coincide.
  if (span_distance(e12, m->basis) > 1e-8) return false;
  if (span_distance(e21, m->basis) > 1e-8) return false;
  for (const AlgElement& b : m->basis) {
    if (span_distance(b, {e12, e21}) > 1e-8) return false;
  }
  return true;
}

// The lifted flip at a generic phase: six peripheral points, the five
// non-unit eigenspaces one-dimensional, not a group, ergodic.
bool criterion3() {
  const Complex lam = std::polar(1.0, kTheta);
  const SpectralData data = eigendecompose(example2(kTheta).map);
  const auto spectrum = peripheral_point_spectrum(data);
  if (spectrum.size() != 6) return false;

  const std::vector<Complex> expected = {
      Complex(1.0, 0.0), Complex(-1.0, 0.0), lam, -lam, std::conj(lam),
      -std::conj(lam)};
  for (const Complex& want : expected) {
    bool found = false;
    for (const auto& [v, m] : spectrum) {
      if (std::abs(v - want) <= 1e-8) {
        found = true;
        if (std::abs(want - Complex(1.0, 0.0)) > 1e-8 && m != 1) return false;
      }
    }
    if (!found) return false;
  }

  std::vector<Complex> values;
  for (const auto& [v, m] : spectrum) values.push_back(v);
  if (group_closure(values).is_group) return false;
  return is_ergodic(data).ergodic;
}

// theta = pi/2: the peripheral set is the full fourth-roots group, with
// two-dimensional eigenspaces at ±i.
bool criterion4() {
  const SpectralData data = eigendecompose(example2(std::numbers::pi / 2.0).map);
  const auto spectrum = peripheral_point_spectrum(data);
  if (!spectrum_matches(spectrum, {{Complex(1.0, 0.0), 1},
                                   {Complex(-1.0, 0.0), 1},
                                   {Complex(0.0, 1.0), 2},
                                   {Complex(0.0, -1.0), 2}})) {
    return false;
  }
  std::vector<Complex> values;
  for (const auto& [v, m] : spectrum) values.push_back(v);
  return group_closure(values).is_group;
}

// The trichotomy: one representative of each case, with verified witnesses.
bool criterion5() {
  // (i) on the rotation family.
  const SuperMap rot = example1(kTheta).map;
  const BlockAlgebra a2({2});
  const Classification ci = classify_eigenvector(
      rot, std::polar(1.0, kTheta), oracle::unit(a2, 0, 0, 1));
  if (ci.theorem_case != TheoremCase::kPartialIsometry) return false;
  if (!ci.e.has_value() || !ci.e_perp.has_value()) return false;
  if ((*ci.e - oracle::unit(a2, 0, 1, 1)).norm() > 1e-9) return false;
  if ((*ci.e_perp - oracle::unit(a2, 0, 0, 0)).norm() > 1e-9) return false;
  if (ci.max_residual > 1e-9) return false;

  // (iii): the diagonally embedded hermitian unitary of the lift, at -1.
  const SuperMap lift = example2(kTheta).map;
  AlgElement u = AlgElement::identity(lift.algebra());
  u.block(1) = -u.block(1);
  const Classification ciii = classify_eigenvector(lift, Complex(-1.0, 0.0), u);
  if (ciii.theorem_case != TheoremCase::kUnitaryMultiple) return false;
  if (ciii.max_residual > 1e-9) return false;

  // (ii) at lambda = i on the quarter-turn lift.
  const SuperMap quarter = example2(std::numbers::pi / 2.0).map;
  const BlockAlgebra& qa = quarter.algebra();
  const AlgElement v1 = oracle::unit(qa, 0, 0, 1) + oracle::unit(qa, 1, 0, 1);
  const AlgElement v2 = oracle::unit(qa, 0, 1, 0) - oracle::unit(qa, 1, 1, 0);
  const Classification cii =
      classify_eigenvector(quarter, Complex(0.0, 1.0), v1 + 2.0 * v2);
  if (cii.theorem_case != TheoremCase::kTwoPartialIsometries) return false;
  if (cii.coefficients.size() != 2) return false;
  if (std::abs(cii.coefficients[0] - 2.0) > 1e-9) return false;
  if (std::abs(cii.coefficients[1] - 1.0) > 1e-9) return false;
  if (cii.max_residual > 1e-9) return false;

  // Equal weights collapse case (ii) to a unitary multiple.
  const Classification mixed = classify_eigenvector(
      quarter, Complex(0.0, 1.0), v1 + std::polar(1.0, 0.7) * v2);
  return mixed.theorem_case == TheoremCase::kUnitaryMultiple;
}

// The positivity hierarchy, at a generic and at the degenerate phase. The
// worst_value pins are exercised on the deterministic batteries alone
// (trials = battery size), since later random samples may go lower still.
bool criterion6() {
  for (const double theta : {kTheta, std::numbers::pi}) {
    const SuperMap f = example1(theta).map;

    const CheckReport pos = positivity_sample_test(f, 1000, 42);
    if (pos.violations != 0) return false;

    const CheckReport kpos = k_positivity_test(f, 2, /*trials=*/1, 42);
    if (kpos.violations == 0 || kpos.first_violation_trial != 0) return false;
    if (std::abs(kpos.worst_value - (-0.5)) > 1e-9) return false;

    const CheckReport cp = cp_test(f);
    if (cp.violations == 0) return false;
    if (std::abs(cp.worst_value - (-0.5)) > 1e-9) return false;

    const CheckReport sch = schwarz_violation_search(f, /*trials=*/2, 42);
    if (sch.violations == 0) return false;
    if (sch.worst_value > -0.4) return false;
  }
  return true;
}

// Adjoint and Jordan covariance across all peripheral eigenspaces of the
// lifted flip.
bool criterion7() {
  const SuperMap f = example2(kTheta).map;
  const SpectralData data = eigendecompose(f);
  const StructureTestReport r = peripheral_structure_tests(f, data, 1e-8);
  return r.passed && r.max_adjoint_residual <= 1e-8 &&
         r.max_jordan_residual <= 1e-8;
}

// The continuous family is a semigroup and rotates the corner by e^{i t theta}.
bool criterion8() {
  const auto family = [](double t) { return example1_continuous(kTheta, t); };
  const SemigroupLawReport law =
      semigroup_law_check(family, {{0.5, 0.5}, {0.3, 1.4}, {2.0, 2.0}}, 1e-12);
  if (!law.passed) return false;

  const BlockAlgebra a({2});
  const AlgElement e12 = oracle::unit(a, 0, 0, 1);
  for (const double t : {0.5, 1.7}) {
    const Complex phase = std::polar(1.0, kTheta * t);
    if ((family(t).apply(e12) - phase * e12).norm() > 1e-12) return false;
  }
  return true;
}

// Builders agree with direct formula application, and full reports are
// byte-identical across reruns.
bool criterion9() {
  const SuperMap rot = example1(kTheta).map;
  const SuperMap cont = example1_continuous(kTheta, 0.8);
  const SuperMap flip = flip_map().map;
  const SuperMap lift = example2(kTheta).map;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const AlgElement x2 = random_element(rot.algebra(), 2025, t);
    if ((rot.apply(x2) - oracle::example1_oracle(kTheta, 1.0, x2)).norm() >
        1e-12 * (1.0 + x2.norm())) {
      return false;
    }
    if ((cont.apply(x2) - oracle::example1_oracle(kTheta, 0.8, x2)).norm() >
        1e-12 * (1.0 + x2.norm())) {
      return false;
    }
    const AlgElement xf = random_element(flip.algebra(), 2025, t);
    if ((flip.apply(xf) - oracle::flip_oracle(xf)).norm() >
        1e-12 * (1.0 + xf.norm())) {
      return false;
    }
    const AlgElement xl = random_element(lift.algebra(), 2025, t);
    if ((lift.apply(xl) - oracle::example2_oracle(kTheta, xl)).norm() >
        1e-12 * (1.0 + xl.norm())) {
      return false;
    }
  }

  const BuiltSystem sys = example1(kTheta);
  AnalysisOptions opts;
  opts.checks = {CheckKind::kPositivity, CheckKind::kKPositivity,
                 CheckKind::kCpChoi, CheckKind::kSchwarz};
  opts.trials = 100;
  const std::string first = run_analysis(sys.map, &sys.state, opts, sys.label).dump();
  const std::string second = run_analysis(sys.map, &sys.state, opts, sys.label).dump();
  return !first.empty() && first == second;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"example1(2pi/5): peripheral {1, l, lbar}, ergodic, not a group", criterion1},
      {"example1(pi): dim M_{-1} = 2, spanned by the antidiagonal", criterion2},
      {"example2(2pi/5): six peripheral points, not a group, ergodic", criterion3},
      {"example2(pi/2): fourth-roots group, dim M_{+-i} = 2", criterion4},
      {"trichotomy: cases (i)/(ii)/(iii) with verified witnesses", criterion5},
      {"positivity hierarchy: positive, not 2-positive, Choi -1/2, Schwarz broken",
       criterion6},
      {"peripheral structure: adjoint and Jordan covariance to 1e-8", criterion7},
      {"continuous family: semigroup law and corner phases to 1e-12", criterion8},
      {"oracle equivalence and byte-identical reports", criterion9},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    bool ok = false;
    std::string note;
    try {
      ok = criteria[i].check();
    } catch (const std::exception& e) {
      note = std::string(" (exception: ") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": "
              << criteria[i].name << note << '\n';
    if (!ok) ++failures;
  }
  return failures;
}
