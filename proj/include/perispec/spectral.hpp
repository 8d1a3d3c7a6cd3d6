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

// Eigen-analysis of a SuperMap: the full point spectrum with clustered
// eigenspaces, the peripheral (unit-modulus) part, an ergodicity verdict,
// group closure of the peripheral spectrum, and the covariance structure
// tests on peripheral eigenspaces,
//
//     x in M_lambda  =>  x* in M_{conj(lambda)},
//     x in M_l1, y in M_l2  =>  x o y in M_{l1 l2}.
//
// Eigenspaces are geometric: orthonormal null-space bases of (S - lambda I)
// obtained by SVD thresholding. Jordan chains are not computed; a warning is
// recorded when the algebraic count of a cluster exceeds its null-space rank.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "perispec/algebra.hpp"
#include "perispec/errors.hpp"
#include "perispec/supermap.hpp"
#include "perispec/tolerances.hpp"

namespace perispec {

struct EigenCluster {
  Complex value;
  // Number of eigenvalues merged into this cluster by the dense solver.
  int algebraic_multiplicity = 0;
  // Orthonormal (Hilbert-Schmidt) basis of ker(S - value*I); its size is the
  // geometric multiplicity.
  std::vector<AlgElement> basis;

  int geometric_multiplicity() const { return static_cast<int>(basis.size()); }
};

struct SpectralData {
  BlockAlgebra algebra;
  std::vector<EigenCluster> eigenclusters;
  // Indices into eigenclusters with | |value| - 1 | <= eps_peripheral.
  std::vector<int> peripheral;
  // Index of the cluster at 1, or -1 when absent.
  int fixed_index = -1;
  std::vector<std::string> warnings;

  std::vector<AlgElement> peripheral_subspace_basis() const {
    std::vector<AlgElement> out;
    for (int idx : peripheral) {
      for (const AlgElement& b : eigenclusters[idx].basis) out.push_back(b);
    }
    return out;
  }
};

namespace detail {

// Multiply by a unit phase making the largest-modulus vec entry real
// positive, so reported bases do not depend on eigensolver internals.
inline Vector canonical_phase(const Vector& v) {
  int arg_max = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best + 1e-14) {
      best = m;
      arg_max = i;
    }
  }
  const Complex pivot = v(arg_max);
  if (std::abs(pivot) == 0.0) return v;
  return (std::conj(pivot) / std::abs(pivot)) * v;
}

}  // namespace detail

// Dense eigendecomposition with eigenvalue clustering. Eigenvalues closer
// than cluster_tol * (1 + max |eig|) are merged (transitively); each
// cluster's eigenspace is the SVD null space of (S - mean*I) at threshold
//
//     tau = max(nullspace_scale * D * eps_machine * |S|_F,  4 * spread),
//
// where spread is the cluster's maximal distance to its mean — merged
// near-degenerate values shift singular values by at most that much.
inline SpectralData eigendecompose(const SuperMap& map, const ToleranceSet& tols = {}) {
  tols.validate();
  const BlockAlgebra& alg = map.algebra();
  const int d = alg.dim();
  if (d > 4096) {
    throw std::invalid_argument("eigendecompose: dimension exceeds the supported 4096");
  }
  const Matrix& s = map.matrix();

  Eigen::ComplexEigenSolver<Matrix> es(s, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigendecompose: dense eigensolver did not converge");
  }
  const Vector eigs = es.eigenvalues();

  double max_abs = 0.0;
  for (int i = 0; i < d; ++i) max_abs = std::max(max_abs, std::abs(eigs(i)));
  const double merge_tol = tols.cluster_tol * (1.0 + max_abs);

  // Transitive clustering via union-find; D is desk-scale, O(D^2) is fine.
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(eigs(i) - eigs(j)) <= merge_tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> groups;
  {
    std::vector<int> root_to_group(d, -1);
    for (int i = 0; i < d; ++i) {
      const int r = find(i);
      if (root_to_group[r] < 0) {
        root_to_group[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[root_to_group[r]].push_back(i);
    }
  }

  SpectralData data{alg, {}, {}, -1, {}};
  const double s_norm = s.norm();
  const double eps_machine = std::numeric_limits<double>::epsilon();

  for (const std::vector<int>& g : groups) {
    Complex mean(0.0, 0.0);
    for (int i : g) mean += eigs(i);
    mean /= static_cast<double>(g.size());
    double spread = 0.0;
    for (int i : g) spread = std::max(spread, std::abs(eigs(i) - mean));

    Matrix shifted = s - mean * Matrix::Identity(d, d);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const double tau =
        std::max(tols.nullspace_scale * d * eps_machine * s_norm, 4.0 * spread);
    int rank_deficiency = 0;
    for (int i = d - 1; i >= 0; --i) {
      if (svd.singularValues()(i) <= tau) {
        ++rank_deficiency;
      } else {
        break;
      }
    }
    if (rank_deficiency == 0) {
      // The eigensolver put an eigenvalue here, so the smallest singular
      // value is tiny; an empty null space means tau was too tight.
      throw NumericalFailure(
          "eigendecompose: null-space detection failed for an eigenvalue cluster");
    }

    EigenCluster cluster;
    cluster.value = mean;
    cluster.algebraic_multiplicity = static_cast<int>(g.size());
    for (int i = d - rank_deficiency; i < d; ++i) {
      cluster.basis.push_back(
          AlgElement::devec(alg, detail::canonical_phase(svd.matrixV().col(i))));
    }
    if (cluster.geometric_multiplicity() < cluster.algebraic_multiplicity) {
      data.warnings.push_back(
          "cluster at (" + std::to_string(mean.real()) + ", " +
          std::to_string(mean.imag()) + "): algebraic count " +
          std::to_string(cluster.algebraic_multiplicity) +
          " exceeds null-space rank " +
          std::to_string(cluster.geometric_multiplicity()) +
          "; geometric eigenspace reported, Jordan structure ignored");
    }
    data.eigenclusters.push_back(std::move(cluster));
  }

  // Deterministic report order: by principal argument, then by modulus.
  std::sort(data.eigenclusters.begin(), data.eigenclusters.end(),
            [](const EigenCluster& a, const EigenCluster& b) {
              const double ra = std::arg(a.value);
              const double rb = std::arg(b.value);
              if (ra != rb) return ra < rb;
              return std::abs(a.value) < std::abs(b.value);
            });

  for (int i = 0; i < static_cast<int>(data.eigenclusters.size()); ++i) {
    const Complex v = data.eigenclusters[i].value;
    if (std::abs(std::abs(v) - 1.0) <= tols.eps_peripheral) {
      data.peripheral.push_back(i);
      if (std::abs(v - Complex(1.0, 0.0)) <= tols.eps_peripheral) data.fixed_index = i;
    }
  }
  return data;
}

// Peripheral point spectrum as (value, geometric multiplicity), sorted by
// principal argument in (-pi, pi].
inline std::vector<std::pair<Complex, int>> peripheral_point_spectrum(
    const SpectralData& data) {
  std::vector<std::pair<Complex, int>> out;
  out.reserve(data.peripheral.size());
  for (int idx : data.peripheral) {
    out.emplace_back(data.eigenclusters[idx].value,
                     data.eigenclusters[idx].geometric_multiplicity());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) {
              return std::arg(a.first) < std::arg(b.first);
            });
  return out;
}

struct ErgodicityVerdict {
  bool ergodic = false;
  // Geometric multiplicity of the cluster at 1 (0 when absent).
  int fixed_dim = 0;
};

// Ergodic iff the fixed space M_1 is exactly the scalar multiples of the
// identity: the cluster at 1 exists, is one-dimensional, and its basis
// vector is proportional to 1 within tol.
inline ErgodicityVerdict is_ergodic(const SpectralData& data, double tol = 1e-8) {
  ErgodicityVerdict v;
  if (data.fixed_index < 0) return v;
  const EigenCluster& fixed = data.eigenclusters[data.fixed_index];
  v.fixed_dim = fixed.geometric_multiplicity();
  if (v.fixed_dim != 1) return v;
  const AlgElement& b = fixed.basis[0];
  const AlgElement one = AlgElement::identity(data.algebra);
  const Complex c = hs_inner(one, b) / hs_inner(one, one);
  v.ergodic = (b - c * one).norm() <= tol * b.norm();
  return v;
}

struct GroupClosureVerdict {
  bool is_group = false;
  bool has_unit = false;
  bool conjugation_closed = false;
  // Pairs (a, b) from the input whose product a*b is not in the set.
  std::vector<std::pair<Complex, Complex>> missing;
};

// A finite subset of the unit circle is a group iff it contains 1 and is
// closed under conjugation (= inversion) and pairwise products. Membership
// is |difference| <= tol. Products are scanned over unordered pairs in
// principal-argument order, so `missing` is deterministic.
inline GroupClosureVerdict group_closure(const std::vector<Complex>& peripheral,
                                         double tol = 1e-8) {
  if (peripheral.empty()) {
    throw std::invalid_argument("group_closure: empty peripheral spectrum");
  }
  std::vector<Complex> vals;
  vals.reserve(peripheral.size());
  for (const Complex& v : peripheral) {
    const double m = std::abs(v);
    if (std::abs(m - 1.0) > 0.1) {
      throw std::invalid_argument("group_closure: value is not of unit modulus");
    }
    vals.push_back(v / m);  // project exactly onto the circle
  }
  std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
    return std::arg(a) < std::arg(b);
  });

  const auto member = [&vals, tol](const Complex& z) {
    for (const Complex& v : vals) {
      if (std::abs(v - z) <= tol) return true;
    }
    return false;
  };

  GroupClosureVerdict verdict;
  verdict.has_unit = member(Complex(1.0, 0.0));
  verdict.conjugation_closed = true;
  for (const Complex& v : vals) {
    if (!member(std::conj(v))) verdict.conjugation_closed = false;
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i; j < vals.size(); ++j) {
      if (!member(vals[i] * vals[j])) verdict.missing.emplace_back(vals[i], vals[j]);
    }
  }
  verdict.is_group =
      verdict.has_unit && verdict.conjugation_closed && verdict.missing.empty();
  return verdict;
}

struct StructureTestFailure {
  std::string relation;  // "adjoint" or "jordan"
  Complex lambda1;
  Complex lambda2;  // unused for "adjoint"
  double residual = 0.0;
};

struct StructureTestReport {
  double max_adjoint_residual = 0.0;
  double max_jordan_residual = 0.0;
  std::vector<StructureTestFailure> failures;
  bool passed = true;
};

// Verifies the covariance of peripheral eigenspaces under adjoints and
// Jordan products. Residuals are absolute against tol * |x| resp.
// tol * |x| * |y| (basis vectors are unit-norm, so the scales coincide).
inline StructureTestReport peripheral_structure_tests(const SuperMap& map,
                                                      const SpectralData& data,
                                                      double tol = 1e-8) {
  StructureTestReport report;
  struct Entry {
    Complex lambda;
    const AlgElement* x;
  };
  std::vector<Entry> entries;
  for (int idx : data.peripheral) {
    for (const AlgElement& b : data.eigenclusters[idx].basis) {
      entries.push_back({data.eigenclusters[idx].value, &b});
    }
  }

  for (const Entry& e : entries) {
    const AlgElement xs = e.x->adjoint();
    const double r = (map.apply(xs) - std::conj(e.lambda) * xs).norm();
    report.max_adjoint_residual = std::max(report.max_adjoint_residual, r);
    if (r > tol * e.x->norm()) {
      report.failures.push_back({"adjoint", e.lambda, Complex(0.0, 0.0), r});
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i; j < entries.size(); ++j) {
      const AlgElement p = jordan_product(*entries[i].x, *entries[j].x);
      const double r =
          (map.apply(p) - entries[i].lambda * entries[j].lambda * p).norm();
      report.max_jordan_residual = std::max(report.max_jordan_residual, r);
      if (r > tol * entries[i].x->norm() * entries[j].x->norm()) {
        report.failures.push_back(
            {"jordan", entries[i].lambda, entries[j].lambda, r});
      }
    }
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace perispec
