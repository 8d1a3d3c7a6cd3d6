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

// Numerical positivity hierarchy for superoperators:
//
//     positive  <=  2-positive  <=  ...  <=  completely positive,
//     Schwarz:  Phi(x)* Phi(x) <= Phi(x*x).
//
// Sampling can only refute: a found violation is a sound certificate that
// the property fails, while a clean pass certifies nothing beyond "no
// violation found" (the `certifies` field keeps the two apart). The one
// exception is cp_test on a single block, where Choi positivity decides CP
// exactly (up to the tolerance).
//
// Structured witnesses run before random samples: k-positivity starts from
// the maximally entangled (Choi) state of each block — the input on which
// id_k (x) Phi reproduces the Choi matrix — and the Schwarz search starts
// from the matrix-unit sums E_ii + E_ij, which break the inequality for
// off-diagonal phase scalings. Known violations are therefore found
// deterministically at fixed trial indices, never by sampling luck.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "perispec/algebra.hpp"
#include "perispec/rng.hpp"
#include "perispec/supermap.hpp"

namespace perispec {

enum class CheckKind { kPositivity, kKPositivity, kCpChoi, kSchwarz };

inline const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::kPositivity: return "positivity";
    case CheckKind::kKPositivity: return "k_positivity";
    case CheckKind::kCpChoi: return "cp_choi";
    case CheckKind::kSchwarz: return "schwarz";
  }
  return "unknown";
}

struct CheckReport {
  CheckKind kind = CheckKind::kPositivity;
  int k = 0;  // ampliation order for k_positivity, else 0
  int trials = 0;
  int violations = 0;
  // Most negative eigenvalue encountered across all trials (may be positive
  // when every output stayed strictly positive definite).
  double worst_value = std::numeric_limits<double>::infinity();
  // Input achieving worst_value.
  std::optional<AlgElement> witness;
  int first_violation_trial = -1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  // "refutation": a violation was found (sound);
  // "positivity_certificate": exact Choi criterion passed (sound);
  // "no_violation_found": sampling passed (heuristic only).
  std::string certifies = "no_violation_found";
  std::string note;
};

namespace detail {

// Minimum eigenvalue of the hermitian part (x + x*)/2 across all blocks.
// For genuinely hermitian inputs this is the minimum eigenvalue proper.
inline double min_eigenvalue(const AlgElement& x) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.num_blocks(); ++i) {
    const Matrix h = 0.5 * (x.block(i) + x.block(i).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

// Shared positivity-sampling core: trials 0..battery-1 take the supplied
// deterministic inputs, later trials draw a fresh PSD sample from the
// substream (seed, trial). Aggregation is by minimum, so the verdict is
// independent of evaluation order.
inline CheckReport positivity_core(CheckKind kind, const SuperMap& map,
                                   const std::vector<AlgElement>& battery,
                                   int trials, std::uint64_t seed, double tol) {
  if (trials < 1) {
    throw std::invalid_argument("positivity check: trials must be >= 1");
  }
  CheckReport report;
  report.kind = kind;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  for (int t = 0; t < trials; ++t) {
    const AlgElement x = t < static_cast<int>(battery.size())
                             ? battery[t]
                             : random_psd(map.algebra(), seed, static_cast<std::uint64_t>(t));
    const double me = min_eigenvalue(map.apply(x));
    if (me < report.worst_value) {
      report.worst_value = me;
      report.witness = x;
    }
    if (me < -tol * x.norm()) {
      ++report.violations;
      if (report.first_violation_trial < 0) report.first_violation_trial = t;
    }
  }
  if (report.violations > 0) report.certifies = "refutation";
  return report;
}

// Unnormalized maximally entangled state of enlarged block i: the rank-one
// positive element sum_{a,b<m} E_ab (x) E_ab with m = min(k, n_i). Feeding it
// to id_k (x) Phi reproduces the Choi matrix of the block (for k >= n_i).
inline AlgElement choi_state(const BlockAlgebra& enlarged, const BlockAlgebra& base,
                             int block, int k) {
  AlgElement x = AlgElement::zero(enlarged);
  const int n = base.block_size(block);
  const int m = std::min(k, n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      x.block(block)(a * n + a, b * n + b) = Complex(1.0, 0.0);
    }
  }
  return x;
}

}  // namespace detail

// Random PSD inputs only; a clean pass is evidence, not proof, of positivity.
inline CheckReport positivity_sample_test(const SuperMap& map, int trials,
                                          std::uint64_t seed, double tol = 1e-10) {
  return detail::positivity_core(CheckKind::kPositivity, map, {}, trials, seed, tol);
}

// Positivity of id_k (x) Phi. The Choi state of every block is tested first
// (trial #0, #1, ...), so k-positivity failures visible in the Choi matrix
// are found deterministically.
inline CheckReport k_positivity_test(const SuperMap& map, int k, int trials,
                                     std::uint64_t seed, double tol = 1e-10) {
  if (k < 1) throw std::invalid_argument("k_positivity_test: k must be >= 1");
  const SuperMap amp = ampliate(map, k);
  std::vector<AlgElement> battery;
  battery.reserve(map.algebra().num_blocks());
  for (int i = 0; i < map.algebra().num_blocks(); ++i) {
    battery.push_back(detail::choi_state(amp.algebra(), map.algebra(), i, k));
  }
  CheckReport report =
      detail::positivity_core(CheckKind::kKPositivity, amp, battery, trials, seed, tol);
  report.k = k;
  return report;
}

// Complete positivity. Single block: exact Choi criterion (min eigenvalue of
// the Choi matrix against an absolute tolerance). Direct sums: falls back to
// the n-positivity sampler with n the total matrix dimension — heuristic,
// flagged in the note.
inline CheckReport cp_test(const SuperMap& map, double tol = 1e-10, int trials = 256,
                           std::uint64_t seed = 0) {
  if (map.algebra().num_blocks() == 1) {
    const Matrix c = choi_matrix(map);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()),
                                             Eigen::EigenvaluesOnly);
    CheckReport report;
    report.kind = CheckKind::kCpChoi;
    report.trials = 1;
    report.tol = tol;
    report.worst_value = es.eigenvalues().minCoeff();
    if (report.worst_value < -tol) {
      report.violations = 1;
      report.first_violation_trial = 0;
      report.certifies = "refutation";
    } else {
      report.certifies = "positivity_certificate";
    }
    return report;
  }
  const int n = map.algebra().matrix_dim();
  CheckReport report = k_positivity_test(map, n, trials, seed, tol);
  report.kind = CheckKind::kCpChoi;
  report.note =
      "direct-sum algebra: CP tested heuristically as " + std::to_string(n) +
      "-positivity sampling (n = total dimension); only a violation is conclusive";
  if (report.violations == 0) report.certifies = "no_violation_found";
  return report;
}

// Searches for x with Phi(x*x) - Phi(x)*Phi(x) not PSD. The deterministic
// battery E_ii + E_ij (i != j, per block) runs first; remaining trials use
// Gaussian x (not PSD — the inequality quantifies over all of the algebra).
// Violation when the defect's minimum eigenvalue drops below -tol |x|^2.
inline CheckReport schwarz_violation_search(const SuperMap& map, int trials,
                                            std::uint64_t seed, double tol = 1e-10) {
  if (trials < 1) {
    throw std::invalid_argument("schwarz_violation_search: trials must be >= 1");
  }
  const BlockAlgebra& alg = map.algebra();
  std::vector<AlgElement> battery;
  for (int blk = 0; blk < alg.num_blocks(); ++blk) {
    const int n = alg.block_size(blk);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        AlgElement x = AlgElement::zero(alg);
        x.block(blk)(i, i) = Complex(1.0, 0.0);
        x.block(blk)(i, j) = Complex(1.0, 0.0);
        battery.push_back(std::move(x));
      }
    }
  }

  CheckReport report;
  report.kind = CheckKind::kSchwarz;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  for (int t = 0; t < trials; ++t) {
    const AlgElement x = t < static_cast<int>(battery.size())
                             ? battery[t]
                             : random_element(alg, seed, static_cast<std::uint64_t>(t));
    const AlgElement fx = map.apply(x);
    const AlgElement defect =
        map.apply(multiply(x.adjoint(), x)) - multiply(fx.adjoint(), fx);
    const double me = detail::min_eigenvalue(defect);
    if (me < report.worst_value) {
      report.worst_value = me;
      report.witness = x;
    }
    const double nx = x.norm();
    if (me < -tol * nx * nx) {
      ++report.violations;
      if (report.first_violation_trial < 0) report.first_violation_trial = t;
    }
  }
  if (report.violations > 0) report.certifies = "refutation";
  return report;
}

}  // namespace perispec
