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

// Linear maps on a BlockAlgebra in superoperator form: a D x D complex
// matrix S acting on vec coordinates,
//
//     vec(Phi(x)) = S . vec(x).
//
// Construction from basis images, application, composition, powers,
// ampliation id_k (x) Phi, the predual action on densities, and the Choi
// matrix for single-block algebras.

#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "perispec/algebra.hpp"

namespace perispec {

class SuperMap {
 public:
  SuperMap(BlockAlgebra algebra, Matrix s)
      : algebra_(std::move(algebra)), s_(std::move(s)) {
    if (s_.rows() != algebra_.dim() || s_.cols() != algebra_.dim()) {
      throw std::invalid_argument("SuperMap: matrix shape does not match algebra");
    }
  }

  static SuperMap identity(const BlockAlgebra& a) {
    return SuperMap(a, Matrix::Identity(a.dim(), a.dim()));
  }

  // Column j of S is vec(images[j]); then apply(basis_j) = images[j] exactly.
  static SuperMap from_basis_images(const BlockAlgebra& a,
                                    const std::vector<AlgElement>& images) {
    if (static_cast<int>(images.size()) != a.dim()) {
      throw std::invalid_argument(
          "from_basis_images: need exactly one image per canonical basis element");
    }
    Matrix s(a.dim(), a.dim());
    for (int j = 0; j < a.dim(); ++j) {
      if (images[j].algebra() != a) {
        throw std::invalid_argument("from_basis_images: image lives on a different algebra");
      }
      s.col(j) = images[j].vec();
    }
    return SuperMap(a, std::move(s));
  }

  const BlockAlgebra& algebra() const { return algebra_; }
  const Matrix& matrix() const { return s_; }

  AlgElement apply(const AlgElement& x) const {
    detail::require_same_algebra(algebra_, x.algebra(), "SuperMap::apply");
    return AlgElement::devec(algebra_, s_ * x.vec());
  }

  // Predual in the Hilbert-Schmidt pairing: tr(rho^* Phi(x)) = tr(Phi_*(rho)^* x)
  // for all x forces the predual superoperator to be S^*.
  SuperMap predual() const { return SuperMap(algebra_, s_.adjoint()); }

  AlgElement apply_predual(const AlgElement& rho) const {
    detail::require_same_algebra(algebra_, rho.algebra(), "SuperMap::apply_predual");
    return AlgElement::devec(algebra_, s_.adjoint() * rho.vec());
  }

 private:
  BlockAlgebra algebra_;
  Matrix s_;
};

// (f . g)(x) = f(g(x)); superoperators multiply in the same order.
inline SuperMap compose(const SuperMap& f, const SuperMap& g) {
  detail::require_same_algebra(f.algebra(), g.algebra(), "compose");
  return SuperMap(f.algebra(), f.matrix() * g.matrix());
}

inline SuperMap power(const SuperMap& f, int n) {
  if (n < 0) throw std::invalid_argument("power: exponent must be nonnegative");
  Matrix acc = Matrix::Identity(f.algebra().dim(), f.algebra().dim());
  Matrix base = f.matrix();
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return SuperMap(f.algebra(), std::move(acc));
}

// id_k (x) Phi on the algebra with every block inflated n_i -> k*n_i.
//
// Basis identification inside enlarged block i (fixed for file compatibility):
// the k-factor is major, the block factor minor, i.e. row index a*n_i + r
// stands for |a> (x) |r| with a < k, r < n_i. An enlarged element xi
// decomposes as xi_i = sum_{a,b} E_ab (x) x_ab^(i); collecting x_ab =
// (+)_i x_ab^(i) across blocks gives an element of the original algebra, and
//
//     (id_k (x) Phi)(xi)_i = sum_{a,b} E_ab (x) Phi(x_ab)_i .
//
// Assembling per-block before applying Phi is what makes this correct for
// maps that mix blocks.
inline SuperMap ampliate(const SuperMap& f, int k) {
  if (k < 1) throw std::invalid_argument("ampliate: k must be >= 1");
  const BlockAlgebra& a = f.algebra();
  std::vector<int> big_sizes;
  big_sizes.reserve(a.num_blocks());
  for (int i = 0; i < a.num_blocks(); ++i) big_sizes.push_back(k * a.block_size(i));
  BlockAlgebra big(std::move(big_sizes));

  Matrix s = Matrix::Zero(big.dim(), big.dim());
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int n = a.block_size(i);
    const int bn = k * n;
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) {
        // y = Phi(E_rc^(i)); the enlarged basis element E_ab (x) E_rc^(i)
        // then maps to E_ab (x) y for every tensor-factor position (a,b).
        const AlgElement y =
            f.apply(AlgElement::basis_element(a, a.block_offset(i) + c * n + r));
        for (int pb = 0; pb < k; ++pb) {
          for (int pa = 0; pa < k; ++pa) {
            const int col = big.block_offset(i) + (pb * n + c) * bn + (pa * n + r);
            for (int j = 0; j < a.num_blocks(); ++j) {
              const int m = a.block_size(j);
              const int bm = k * m;
              for (int cc = 0; cc < m; ++cc) {
                for (int rr = 0; rr < m; ++rr) {
                  const Complex v = y.block(j)(rr, cc);
                  if (v != Complex(0.0, 0.0)) {
                    const int row =
                        big.block_offset(j) + (pb * m + cc) * bm + (pa * m + rr);
                    s(row, col) = v;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return SuperMap(std::move(big), std::move(s));
}

// Choi matrix of a map on a single full block M_n: the n^2 x n^2 matrix whose
// (i,j) n x n block is Phi(E_ij). Positive semidefinite iff Phi is completely
// positive; hermitian iff Phi preserves adjoints.
inline Matrix choi_matrix(const SuperMap& f) {
  const BlockAlgebra& a = f.algebra();
  if (a.num_blocks() != 1) {
    throw std::domain_error(
        "choi_matrix: defined for single-block algebras only; "
        "use k_positivity_test for direct sums");
  }
  const int n = a.block_size(0);
  Matrix c(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      AlgElement e = AlgElement::zero(a);
      e.block(0)(i, j) = Complex(1.0, 0.0);
      c.block(i * n, j * n, n, n) = f.apply(e).block(0);
    }
  }
  return c;
}

struct MapFlags {
  bool unital = false;
  bool adjoint_preserving = false;
  // Unset when no state was supplied to map_flags.
  std::optional<bool> state_invariant;
};

// unital:             Phi(1) = 1
// adjoint_preserving: Phi(b*) = Phi(b)* on every canonical basis element
// state_invariant:    Phi_*(rho) = rho, equivalently omega(Phi(x)) = omega(x)
inline MapFlags map_flags(const SuperMap& f, const State* state = nullptr,
                          double tol = 1e-10) {
  MapFlags flags;
  const BlockAlgebra& a = f.algebra();
  const AlgElement one = AlgElement::identity(a);
  flags.unital = (f.apply(one) - one).norm() <= tol * one.norm();

  flags.adjoint_preserving = true;
  for (int j = 0; j < a.dim(); ++j) {
    const AlgElement b = AlgElement::basis_element(a, j);
    const double r = (f.apply(b.adjoint()) - f.apply(b).adjoint()).norm();
    if (r > tol) {
      flags.adjoint_preserving = false;
      break;
    }
  }

  if (state != nullptr) {
    detail::require_same_algebra(a, state->algebra(), "map_flags");
    const AlgElement rho = state->density_element();
    flags.state_invariant = (f.apply_predual(rho) - rho).norm() <= tol * rho.norm();
  }
  return flags;
}

}  // namespace perispec
