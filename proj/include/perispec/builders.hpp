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

// Ready-made systems (map + invariant state), each a positive unital map
// whose peripheral spectrum exhibits behaviour impossible for completely
// positive (or even Schwarz) maps.
//
// example1 on M_2, with lambda0 = e^{i theta}:
//
//     Phi([[a, b], [c, d]]) = [[(a+d)/2,        lambda0 b],
//                              [conj(lambda0) c, (a+d)/2 ]],
//
// invariant state (1/2) tr. Positive and unital for every theta, ergodic,
// peripheral spectrum {1, lambda0, conj(lambda0)} — not a group unless
// lambda0 = -1 or lambda0^3 = 1. Not 2-positive, not Schwarz.
//
// example1_continuous: the same display with lambda0^t := e^{i t theta}
// (principal branch; the branch is this library's recorded convention),
// a semigroup Phi_s Phi_t = Phi_{s+t} for s, t >= 0.
//
// flip_map on C^2 (two 1x1 blocks): Psi(a1, a2) = (a2, a1), state (1/2, 1/2);
// an ergodic *-automorphism with peripheral spectrum {1, -1}.
//
// mat2_lift takes any such abelian system (Psi, omega) to Mat_2 of it:
//
//     Phi([[a, b], [c, d]]) = [[Psi((a+d)/2),        lambda0 Psi(b)],
//                              [conj(lambda0) Psi(c), Psi((a+d)/2) ]],
//
// with state omega~([[a,b],[c,d]]) = (omega(a) + omega(d))/2.
//
// example2 = mat2_lift of flip_map: blocks [2, 2], ergodic, peripheral
// spectrum {1, -1, ±lambda0, ±conj(lambda0)}.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perispec/algebra.hpp"
#include "perispec/supermap.hpp"

namespace perispec {

struct BuiltSystem {
  SuperMap map;
  State state;
  std::string label;
  // Nonempty when the requested parameters degenerate (still constructed).
  std::string warning;
};

namespace detail {
inline std::string format_theta(double theta) {
  std::ostringstream os;
  os.precision(12);
  os << theta;
  return os.str();
}
}  // namespace detail

inline SuperMap example1_continuous(double theta, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("example1_continuous: t must be nonnegative");
  }
  const BlockAlgebra alg({2});
  const Complex phase = std::polar(1.0, theta * t);  // lambda0^t, principal branch
  std::vector<AlgElement> images;
  images.reserve(4);
  AlgElement half_one = 0.5 * AlgElement::identity(alg);
  // Canonical basis order: E11, E21, E12, E22.
  images.push_back(half_one);                                              // E11
  AlgElement e21 = AlgElement::zero(alg);
  e21.block(0)(1, 0) = std::conj(phase);
  images.push_back(e21);                                                   // E21
  AlgElement e12 = AlgElement::zero(alg);
  e12.block(0)(0, 1) = phase;
  images.push_back(e12);                                                   // E12
  images.push_back(half_one);                                              // E22
  return SuperMap::from_basis_images(alg, images);
}

inline BuiltSystem example1(double theta) {
  SuperMap map = example1_continuous(theta, 1.0);
  const BlockAlgebra& alg = map.algebra();
  State state(alg, {0.5 * Matrix::Identity(2, 2)});
  return BuiltSystem{std::move(map), std::move(state),
                     "example1(theta=" + detail::format_theta(theta) + ")", ""};
}

inline BuiltSystem flip_map() {
  const BlockAlgebra alg({1, 1});
  AlgElement img0 = AlgElement::zero(alg);
  img0.block(1)(0, 0) = Complex(1.0, 0.0);
  AlgElement img1 = AlgElement::zero(alg);
  img1.block(0)(0, 0) = Complex(1.0, 0.0);
  SuperMap map = SuperMap::from_basis_images(alg, {img0, img1});
  State state(alg, {0.5 * Matrix::Identity(1, 1), 0.5 * Matrix::Identity(1, 1)});
  return BuiltSystem{std::move(map), std::move(state), "flip", ""};
}

// Lift an abelian system to 2x2 matrices over it. The base algebra must be a
// direct sum of k one-dimensional blocks; the result lives on k blocks of
// size 2, block j holding the j-th component of each of the four entry roles
// a, b, c, d.
inline BuiltSystem mat2_lift(const SuperMap& psi, const State& omega, double theta) {
  const BlockAlgebra& base = psi.algebra();
  detail::require_same_algebra(base, omega.algebra(), "mat2_lift");
  for (int i = 0; i < base.num_blocks(); ++i) {
    if (base.block_size(i) != 1) {
      throw std::invalid_argument("mat2_lift: base algebra must be abelian (all blocks 1x1)");
    }
  }
  const int k = base.num_blocks();
  const BlockAlgebra big(std::vector<int>(k, 2));
  const Complex lambda0 = std::polar(1.0, theta);

  // Entry roles inside each 2x2 block: (0,0) = a, (0,1) = b, (1,0) = c,
  // (1,1) = d, each a k-vector = element of the base algebra.
  std::vector<AlgElement> images;
  images.reserve(big.dim());
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < 2; ++c) {
      for (int r = 0; r < 2; ++r) {
        const AlgElement pe = psi.apply(AlgElement::basis_element(base, i));
        AlgElement img = AlgElement::zero(big);
        if (r == c) {
          // a or d role: image diagonal is Psi((a+d)/2) in both corners.
          for (int j = 0; j < k; ++j) {
            const Complex v = 0.5 * pe.block(j)(0, 0);
            img.block(j)(0, 0) = v;
            img.block(j)(1, 1) = v;
          }
        } else if (r == 0 && c == 1) {
          for (int j = 0; j < k; ++j) {
            img.block(j)(0, 1) = lambda0 * pe.block(j)(0, 0);
          }
        } else {  // r == 1, c == 0
          for (int j = 0; j < k; ++j) {
            img.block(j)(1, 0) = std::conj(lambda0) * pe.block(j)(0, 0);
          }
        }
        images.push_back(std::move(img));
      }
    }
  }
  SuperMap map = SuperMap::from_basis_images(big, images);

  std::vector<Matrix> densities;
  densities.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double w = omega.density_block(j)(0, 0).real();
    densities.push_back(0.5 * w * Matrix::Identity(2, 2));
  }
  State state(big, std::move(densities));
  return BuiltSystem{std::move(map), std::move(state),
                     "mat2_lift(theta=" + detail::format_theta(theta) + ")", ""};
}

inline BuiltSystem example2(double theta) {
  const BuiltSystem base = flip_map();
  BuiltSystem sys = mat2_lift(base.map, base.state, theta);
  sys.label = "example2(theta=" + detail::format_theta(theta) + ")";
  const Complex lambda0 = std::polar(1.0, theta);
  if (std::abs(lambda0 - Complex(1.0, 0.0)) < 1e-9 ||
      std::abs(lambda0 + Complex(1.0, 0.0)) < 1e-9) {
    sys.warning =
        "lambda0 is ±1: peripheral eigenvalues collapse onto {1,-1} and the "
        "spectrum is a group; construction proceeds";
  }
  return sys;
}

struct SemigroupLawReport {
  struct PairResult {
    double s = 0.0;
    double t = 0.0;
    double deviation = 0.0;
  };
  std::vector<PairResult> pairs;
  double max_deviation = 0.0;
  bool passed = false;
};

// Checks |S_s S_t - S_{s+t}|_F <= tol over the given (s, t) pairs.
inline SemigroupLawReport semigroup_law_check(
    const std::function<SuperMap(double)>& family,
    const std::vector<std::pair<double, double>>& pairs, double tol) {
  SemigroupLawReport report;
  for (const auto& [s, t] : pairs) {
    if (s <= 0.0 || t <= 0.0) {
      throw std::invalid_argument("semigroup_law_check: pair entries must be positive");
    }
    const SuperMap fs = family(s);
    const SuperMap ft = family(t);
    const SuperMap fst = family(s + t);
    const double dev = (fs.matrix() * ft.matrix() - fst.matrix()).norm();
    report.pairs.push_back({s, t, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace perispec
