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

// Trichotomy for peripheral eigenvectors of an ergodic positive unital map
// with faithful invariant state. Every such x falls into exactly one of
//
//   (i)   x = a v,            v a partial isometry, v*v = e, v v* = e_perp,
//                             e a nontrivial projection;
//   (ii)  x = a1 v1 + a2 v2,  a1 != a2, v1*v1 = e = v2 v2*,
//                             v1 v1* = e_perp = v2*v2;
//   (iii) x = a u,            u unitary.
//
// The classifier reads the case off the spectral pattern of h = x*x: one
// clustered singular value with full support is (iii); one with partial
// support is (i); two on complementary supports is (ii). Any other pattern
// means the hypotheses are not met and raises PatternViolation.
//
// Gauge: coefficients are real, positive and descending; all phases live in
// the witnesses. This makes outputs reproducible; the underlying coefficients
// are otherwise only determined up to phase.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perispec/algebra.hpp"
#include "perispec/supermap.hpp"
#include "perispec/tolerances.hpp"

namespace perispec {

class ZeroVectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAnEigenvectorError : public std::runtime_error {
 public:
  NotAnEigenvectorError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// The supplied map/vector pair does not produce one of the three admissible
// singular patterns — the ergodicity hypothesis fails (or the vector is not
// peripheral). Carries the observed cluster values for diagnosis.
class PatternViolationError : public std::runtime_error {
 public:
  PatternViolationError(const std::string& what, std::vector<double> cluster_values)
      : std::runtime_error(what), cluster_values_(std::move(cluster_values)) {}
  const std::vector<double>& cluster_values() const { return cluster_values_; }

 private:
  std::vector<double> cluster_values_;
};

enum class TheoremCase {
  kPartialIsometry,      // (i)
  kTwoPartialIsometries, // (ii)
  kUnitaryMultiple,      // (iii)
};

inline const char* theorem_case_name(TheoremCase c) {
  switch (c) {
    case TheoremCase::kPartialIsometry: return "partial_isometry";
    case TheoremCase::kTwoPartialIsometries: return "two_partial_isometries";
    case TheoremCase::kUnitaryMultiple: return "unitary_multiple";
  }
  return "unknown";
}

struct Classification {
  TheoremCase theorem_case = TheoremCase::kUnitaryMultiple;
  Complex lambda;
  // 1 entry for cases (i)/(iii); 2 descending entries for case (ii).
  std::vector<double> coefficients;
  // Aligned with coefficients: {v}, {v1, v2}, or {u}.
  std::vector<AlgElement> witnesses;
  std::optional<AlgElement> e;
  std::optional<AlgElement> e_perp;
  // (identity label, residual) for every verified witness identity.
  std::vector<std::pair<std::string, double>> identity_residuals;
  double max_residual = 0.0;

  void record(std::string label, double r) {
    max_residual = std::max(max_residual, r);
    identity_residuals.emplace_back(std::move(label), r);
  }
};

inline Classification classify_eigenvector(const SuperMap& map, Complex lambda,
                                           const AlgElement& x,
                                           const ToleranceSet& tols = {}) {
  tols.validate();
  detail::require_same_algebra(map.algebra(), x.algebra(), "classify_eigenvector");
  const double nx = x.norm();
  if (nx == 0.0) {
    throw ZeroVectorError("classify_eigenvector: zero vector");
  }
  if (std::abs(std::abs(lambda) - 1.0) > tols.eps_peripheral) {
    throw NotAnEigenvectorError(
        "classify_eigenvector: eigenvalue is not of unit modulus",
        std::abs(std::abs(lambda) - 1.0));
  }
  const double eig_residual = (map.apply(x) - lambda * x).norm();
  if (eig_residual > tols.eps_residual * nx) {
    throw NotAnEigenvectorError(
        "classify_eigenvector: residual |Phi(x) - lambda x| = " +
            std::to_string(eig_residual) + " exceeds tolerance",
        eig_residual);
  }

  const BlockAlgebra& alg = x.algebra();
  const AlgElement one = AlgElement::identity(alg);
  const int full_rank = alg.matrix_dim();

  const AlgElement h = multiply(x.adjoint(), x);
  std::vector<EigenProjection> clusters = hermitian_spectrum(h, tols.cluster_tol);

  double top = 0.0;
  for (const EigenProjection& c : clusters) top = std::max(top, std::abs(c.value));
  const double zero_tol = tols.cluster_tol * (1.0 + top);
  std::vector<const EigenProjection*> nonzero;
  for (const EigenProjection& c : clusters) {
    if (c.value > zero_tol) nonzero.push_back(&c);
  }
  // Descending singular clusters.
  std::sort(nonzero.begin(), nonzero.end(),
            [](const EigenProjection* a, const EigenProjection* b) {
              return a->value > b->value;
            });

  const auto cluster_values = [&clusters]() {
    std::vector<double> vals;
    vals.reserve(clusters.size());
    for (const EigenProjection& c : clusters) vals.push_back(c.value);
    return vals;
  };
  // Witness identities of genuine eigenvectors hold to solver precision;
  // when the Theorem's hypotheses fail they break at O(1). This absolute
  // threshold separates the two regimes.
  const double verify_tol = 1e-8 * (1.0 + std::sqrt(static_cast<double>(full_rank)));

  Classification out;
  out.lambda = lambda;

  if (nonzero.empty()) {
    throw PatternViolationError(
        "classify_eigenvector: x*x is numerically zero for a nonzero x",
        cluster_values());
  }

  if (nonzero.size() == 1) {
    const EigenProjection& c = *nonzero[0];
    const double s = std::sqrt(c.value);
    if (c.rank == full_rank) {
      // (iii): x*x = s^2 1, so u = x/s satisfies u*u = 1; check u u* = 1 too.
      const AlgElement u = (1.0 / s) * x;
      out.theorem_case = TheoremCase::kUnitaryMultiple;
      out.coefficients = {s};
      out.record("u*u = 1", (multiply(u.adjoint(), u) - one).norm());
      const double r_range = (multiply(u, u.adjoint()) - one).norm();
      if (r_range > verify_tol) {
        throw PatternViolationError(
            "classify_eigenvector: x*x is scalar but x x* is not (u not unitary)",
            cluster_values());
      }
      out.record("u u* = 1", r_range);
      out.witnesses = {u};
      return out;
    }
    // (i): x*x = s^2 e with e nontrivial; v = x/s, and v v* must be e_perp.
    const AlgElement v = (1.0 / s) * x;
    const AlgElement e = c.projection;
    const AlgElement e_perp = one - e;
    out.theorem_case = TheoremCase::kPartialIsometry;
    out.coefficients = {s};
    out.record("v*v = e", (multiply(v.adjoint(), v) - e).norm());
    const double r_range = (multiply(v, v.adjoint()) - e_perp).norm();
    if (r_range > verify_tol) {
      throw PatternViolationError(
          "classify_eigenvector: v v* is not the complement of the support of v",
          cluster_values());
    }
    out.record("v v* = e_perp", r_range);
    out.witnesses = {v};
    out.e = e;
    out.e_perp = e_perp;
    return out;
  }

  if (nonzero.size() == 2) {
    // (ii): supports of the two singular clusters must fill the identity.
    const EigenProjection& big = *nonzero[0];
    const EigenProjection& small = *nonzero[1];
    const double r_compl = (big.projection + small.projection - one).norm();
    if (r_compl > verify_tol) {
      throw PatternViolationError(
          "classify_eigenvector: the two singular supports are not complementary",
          cluster_values());
    }
    const double s1 = std::sqrt(big.value);
    const double s2 = std::sqrt(small.value);
    const AlgElement e = big.projection;   // support of the larger cluster
    const AlgElement e_perp = one - e;
    const AlgElement v1 = (1.0 / s1) * multiply(x, e);
    const AlgElement v2 = (1.0 / s2) * multiply(x, e_perp);

    out.theorem_case = TheoremCase::kTwoPartialIsometries;
    out.coefficients = {s1, s2};
    out.record("supports complementary", r_compl);
    out.record("v1*v1 = e", (multiply(v1.adjoint(), v1) - e).norm());
    out.record("v2*v2 = e_perp", (multiply(v2.adjoint(), v2) - e_perp).norm());
    const double r1 = (multiply(v1, v1.adjoint()) - e_perp).norm();
    const double r2 = (multiply(v2, v2.adjoint()) - e).norm();
    if (r1 > verify_tol || r2 > verify_tol) {
      throw PatternViolationError(
          "classify_eigenvector: witness ranges do not swap the supports",
          cluster_values());
    }
    out.record("v1 v1* = e_perp", r1);
    out.record("v2 v2* = e", r2);
    out.witnesses = {v1, v2};
    out.e = e;
    out.e_perp = e_perp;
    return out;
  }

  throw PatternViolationError(
      "classify_eigenvector: " + std::to_string(nonzero.size()) +
          " distinct nonzero singular clusters (at most 2 admissible); "
          "the map is likely not ergodic",
      cluster_values());
}

struct VerificationReport {
  double recombination_residual = 0.0;  // relative to |x|
  std::vector<std::pair<std::string, double>> identity_residuals;
  double max_identity_residual = 0.0;
  bool passed = false;
};

// Independently recombines the witnesses and re-checks every identity the
// claimed case asserts. Intentionally does not trust any residual stored in
// the Classification.
inline VerificationReport verify_classification(const AlgElement& x,
                                                const Classification& c,
                                                double tol = 1e-9) {
  VerificationReport report;
  const BlockAlgebra& alg = x.algebra();
  const AlgElement one = AlgElement::identity(alg);
  const auto record = [&report](const std::string& label, double r) {
    report.identity_residuals.emplace_back(label, r);
    report.max_identity_residual = std::max(report.max_identity_residual, r);
  };

  AlgElement recombined = AlgElement::zero(alg);
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    recombined = recombined + c.coefficients[i] * c.witnesses[i];
  }
  report.recombination_residual =
      (recombined - x).norm() / (x.norm() > 0.0 ? x.norm() : 1.0);

  switch (c.theorem_case) {
    case TheoremCase::kUnitaryMultiple: {
      const AlgElement& u = c.witnesses.at(0);
      record("u*u = 1", (multiply(u.adjoint(), u) - one).norm());
      record("u u* = 1", (multiply(u, u.adjoint()) - one).norm());
      break;
    }
    case TheoremCase::kPartialIsometry: {
      const AlgElement& v = c.witnesses.at(0);
      const AlgElement& e = c.e.value();
      const AlgElement& e_perp = c.e_perp.value();
      record("v*v = e", (multiply(v.adjoint(), v) - e).norm());
      record("v v* = e_perp", (multiply(v, v.adjoint()) - e_perp).norm());
      record("e + e_perp = 1", (e + e_perp - one).norm());
      record("e idempotent", (multiply(e, e) - e).norm());
      // e must be a nontrivial projection: integer trace strictly inside
      // (0, N).
      const double tr = e.trace().real();
      const double nontrivial =
          std::min(tr, static_cast<double>(alg.matrix_dim()) - tr);
      record("e nontrivial", nontrivial >= 0.5 ? 0.0 : 1.0);
      break;
    }
    case TheoremCase::kTwoPartialIsometries: {
      const AlgElement& v1 = c.witnesses.at(0);
      const AlgElement& v2 = c.witnesses.at(1);
      const AlgElement& e = c.e.value();
      const AlgElement& e_perp = c.e_perp.value();
      record("v1*v1 = e", (multiply(v1.adjoint(), v1) - e).norm());
      record("v1 v1* = e_perp", (multiply(v1, v1.adjoint()) - e_perp).norm());
      record("v2*v2 = e_perp", (multiply(v2.adjoint(), v2) - e_perp).norm());
      record("v2 v2* = e", (multiply(v2, v2.adjoint()) - e).norm());
      record("e + e_perp = 1", (e + e_perp - one).norm());
      record("coefficients distinct",
             std::abs(c.coefficients.at(0) - c.coefficients.at(1)) > tol ? 0.0 : 1.0);
      break;
    }
  }
  report.passed = report.recombination_residual <= tol &&
                  report.max_identity_residual <= tol;
  return report;
}

}  // namespace perispec
