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

// Finite-dimensional *-algebras given as direct sums of full complex matrix
// blocks: elements, adjoints, ordinary and Jordan products, spectral
// decomposition of hermitian elements, and structural predicates
// (projection / partial isometry / unitary).
//
// Conventions fixed here and relied on by every other header:
//   canonical basis = matrix units of each block, column-major within a
//   block (E11, E21, ..., E12, E22, ...), blocks concatenated in order;
//   vec(x) stacks the columns of each block and concatenates the blocks,
//   so vec is a linear bijection onto C^D with D = sum n_i^2, and the
//   Hilbert-Schmidt inner product <x,y> = sum_i tr(x_i^* y_i) becomes the
//   standard inner product of the vec coordinates.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace perispec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Direct sum of full matrix blocks [n1, ..., nk]. Immutable.
class BlockAlgebra {
 public:
  explicit BlockAlgebra(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) {
      throw std::invalid_argument("BlockAlgebra: at least one block required");
    }
    offsets_.reserve(sizes_.size());
    for (int n : sizes_) {
      if (n < 1) {
        throw std::invalid_argument("BlockAlgebra: block sizes must be positive");
      }
      offsets_.push_back(dim_);
      dim_ += n * n;
    }
  }

  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  int block_size(int i) const { return sizes_[i]; }
  // Start of block i in vec coordinates.
  int block_offset(int i) const { return offsets_[i]; }
  // Vector-space dimension D = sum n_i^2 (length of the canonical basis).
  int dim() const { return dim_; }
  // Dimension of the underlying Hilbert space, N = sum n_i.
  int matrix_dim() const {
    int n = 0;
    for (int s : sizes_) n += s;
    return n;
  }
  const std::vector<int>& block_sizes() const { return sizes_; }

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.sizes_ == b.sizes_;
  }
  friend bool operator!=(const BlockAlgebra& a, const BlockAlgebra& b) {
    return !(a == b);
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

namespace detail {
inline void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b,
                                 const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) +
                                ": operands live on different algebras");
  }
}
}  // namespace detail

// An element of a BlockAlgebra: one complex matrix per block. Value type,
// immutable in spirit (all operations return fresh elements).
class AlgElement {
 public:
  AlgElement(BlockAlgebra algebra, std::vector<Matrix> blocks)
      : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.num_blocks()) {
      throw std::invalid_argument("AlgElement: block count mismatch");
    }
    for (int i = 0; i < algebra_.num_blocks(); ++i) {
      const int n = algebra_.block_size(i);
      if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
        throw std::invalid_argument("AlgElement: block shape mismatch");
      }
    }
  }

  static AlgElement zero(const BlockAlgebra& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int i = 0; i < a.num_blocks(); ++i) {
      blocks.push_back(Matrix::Zero(a.block_size(i), a.block_size(i)));
    }
    return AlgElement(a, std::move(blocks));
  }

  static AlgElement identity(const BlockAlgebra& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int i = 0; i < a.num_blocks(); ++i) {
      blocks.push_back(Matrix::Identity(a.block_size(i), a.block_size(i)));
    }
    return AlgElement(a, std::move(blocks));
  }

  // index runs over the canonical basis: block by block, column-major.
  static AlgElement basis_element(const BlockAlgebra& a, int index) {
    if (index < 0 || index >= a.dim()) {
      throw std::out_of_range("basis_element: index out of range");
    }
    AlgElement e = zero(a);
    for (int i = 0; i < a.num_blocks(); ++i) {
      const int n = a.block_size(i);
      const int local = index - a.block_offset(i);
      if (local >= 0 && local < n * n) {
        e.blocks_[i](local % n, local / n) = Complex(1.0, 0.0);
        break;
      }
    }
    return e;
  }

  const BlockAlgebra& algebra() const { return algebra_; }
  int num_blocks() const { return algebra_.num_blocks(); }
  const Matrix& block(int i) const { return blocks_[i]; }
  Matrix& block(int i) { return blocks_[i]; }

  Vector vec() const {
    Vector v(algebra_.dim());
    for (int i = 0; i < num_blocks(); ++i) {
      const int n = algebra_.block_size(i);
      v.segment(algebra_.block_offset(i), n * n) =
          Eigen::Map<const Vector>(blocks_[i].data(), n * n);
    }
    return v;
  }

  static AlgElement devec(const BlockAlgebra& a, const Vector& v) {
    if (v.size() != a.dim()) {
      throw std::invalid_argument("devec: vector length does not match algebra");
    }
    std::vector<Matrix> blocks;
    blocks.reserve(a.num_blocks());
    for (int i = 0; i < a.num_blocks(); ++i) {
      const int n = a.block_size(i);
      Matrix b(n, n);
      Eigen::Map<Vector>(b.data(), n * n) = v.segment(a.block_offset(i), n * n);
      blocks.push_back(std::move(b));
    }
    return AlgElement(a, std::move(blocks));
  }

  // Hilbert-Schmidt norm.
  double norm() const {
    double s = 0.0;
    for (const Matrix& b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
  }

  Complex trace() const {
    Complex t(0.0, 0.0);
    for (const Matrix& b : blocks_) t += b.trace();
    return t;
  }

  AlgElement adjoint() const {
    std::vector<Matrix> blocks;
    blocks.reserve(blocks_.size());
    for (const Matrix& b : blocks_) blocks.push_back(b.adjoint());
    return AlgElement(algebra_, std::move(blocks));
  }

  friend AlgElement operator+(const AlgElement& x, const AlgElement& y) {
    detail::require_same_algebra(x.algebra_, y.algebra_, "operator+");
    std::vector<Matrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (std::size_t i = 0; i < x.blocks_.size(); ++i) {
      blocks.push_back(x.blocks_[i] + y.blocks_[i]);
    }
    return AlgElement(x.algebra_, std::move(blocks));
  }

  friend AlgElement operator-(const AlgElement& x, const AlgElement& y) {
    detail::require_same_algebra(x.algebra_, y.algebra_, "operator-");
    std::vector<Matrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (std::size_t i = 0; i < x.blocks_.size(); ++i) {
      blocks.push_back(x.blocks_[i] - y.blocks_[i]);
    }
    return AlgElement(x.algebra_, std::move(blocks));
  }

  friend AlgElement operator*(const Complex& c, const AlgElement& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (const Matrix& b : x.blocks_) blocks.push_back(c * b);
    return AlgElement(x.algebra_, std::move(blocks));
  }

  friend AlgElement operator*(const AlgElement& x, const Complex& c) { return c * x; }
  friend AlgElement operator*(double c, const AlgElement& x) { return Complex(c, 0.0) * x; }
  friend AlgElement operator*(const AlgElement& x, double c) { return Complex(c, 0.0) * x; }
  friend AlgElement operator-(const AlgElement& x) { return Complex(-1.0, 0.0) * x; }

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

inline AlgElement adjoint(const AlgElement& x) { return x.adjoint(); }

// Blockwise matrix product.
inline AlgElement multiply(const AlgElement& x, const AlgElement& y) {
  detail::require_same_algebra(x.algebra(), y.algebra(), "multiply");
  std::vector<Matrix> blocks;
  blocks.reserve(x.num_blocks());
  for (int i = 0; i < x.num_blocks(); ++i) {
    blocks.push_back(x.block(i) * y.block(i));
  }
  return AlgElement(x.algebra(), std::move(blocks));
}

inline AlgElement operator*(const AlgElement& x, const AlgElement& y) {
  return multiply(x, y);
}

// x o y = (xy + yx) / 2.
inline AlgElement jordan_product(const AlgElement& x, const AlgElement& y) {
  detail::require_same_algebra(x.algebra(), y.algebra(), "jordan_product");
  return 0.5 * (multiply(x, y) + multiply(y, x));
}

// <x,y> = sum_i tr(x_i^* y_i); antilinear in the first argument.
inline Complex hs_inner(const AlgElement& x, const AlgElement& y) {
  detail::require_same_algebra(x.algebra(), y.algebra(), "hs_inner");
  Complex s(0.0, 0.0);
  for (int i = 0; i < x.num_blocks(); ++i) {
    s += (x.block(i).adjoint() * y.block(i)).trace();
  }
  return s;
}

inline bool is_hermitian(const AlgElement& x, double tol = 1e-10) {
  return (x - x.adjoint()).norm() <= tol * (1.0 + x.norm());
}

// One spectral cluster of a hermitian element: eigenvalue and the spectral
// projection onto the clustered eigenspace (an element of the same algebra).
struct EigenProjection {
  double value = 0.0;
  AlgElement projection;
  int rank = 0;
};

// Spectral decomposition of a hermitian h: eigenvalues across all blocks are
// clustered when closer than cluster_tol * (1 + |h|_op); the returned
// projections are hermitian idempotents that are mutually orthogonal and sum
// to the identity, and sum_i value_i P_i reconstructs h. The zero element
// yields the single pair (0, identity).
inline std::vector<EigenProjection> hermitian_spectrum(const AlgElement& h,
                                                       double cluster_tol = 1e-8) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_spectrum: input is not hermitian");
  }
  const BlockAlgebra& alg = h.algebra();

  struct Pair {
    double value;
    int block;
    Vector evec;
  };
  std::vector<Pair> pairs;
  pairs.reserve(alg.matrix_dim());
  double max_abs = 0.0;
  for (int i = 0; i < alg.num_blocks(); ++i) {
    // Symmetrize before solving so the result is exactly hermitian.
    Matrix hb = 0.5 * (h.block(i) + h.block(i).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hb);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("hermitian_spectrum: eigensolver failed");
    }
    for (int q = 0; q < alg.block_size(i); ++q) {
      pairs.push_back({es.eigenvalues()(q), i, es.eigenvectors().col(q)});
      max_abs = std::max(max_abs, std::abs(es.eigenvalues()(q)));
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.value < b.value; });

  const double tol_abs = cluster_tol * (1.0 + max_abs);
  std::vector<EigenProjection> out;
  std::size_t start = 0;
  while (start < pairs.size()) {
    std::size_t end = start + 1;
    while (end < pairs.size() && pairs[end].value - pairs[end - 1].value <= tol_abs) {
      ++end;
    }
    double mean = 0.0;
    AlgElement proj = AlgElement::zero(alg);
    for (std::size_t q = start; q < end; ++q) {
      mean += pairs[q].value;
      proj.block(pairs[q].block) += pairs[q].evec * pairs[q].evec.adjoint();
    }
    mean /= static_cast<double>(end - start);
    out.push_back({mean, std::move(proj), static_cast<int>(end - start)});
    start = end;
  }
  return out;
}

struct StructureFlags {
  bool hermitian = false;
  bool psd = false;
  bool projection = false;
  bool partial_isometry = false;
  bool unitary = false;
  bool scalar_multiple_of_identity = false;
};

// Predicates the eigenvector classification is stated in. Flags are mutually
// consistent: unitary implies partial_isometry.
inline StructureFlags structure_flags(const AlgElement& x, double tol = 1e-10) {
  StructureFlags f;
  const double nx = x.norm();
  const AlgElement xs = x.adjoint();
  const AlgElement one = AlgElement::identity(x.algebra());

  f.hermitian = (x - xs).norm() <= tol * (1.0 + nx);
  if (f.hermitian) {
    double min_eig = 0.0;
    for (int i = 0; i < x.num_blocks(); ++i) {
      Matrix hb = 0.5 * (x.block(i) + x.block(i).adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(hb);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    f.psd = min_eig >= -tol * (1.0 + nx);
    f.projection = (multiply(x, x) - x).norm() <= tol * (1.0 + nx);
  }
  f.partial_isometry = (multiply(multiply(x, xs), x) - x).norm() <= tol * nx;
  f.unitary = (multiply(xs, x) - one).norm() <= tol * (1.0 + one.norm()) &&
              (multiply(x, xs) - one).norm() <= tol * (1.0 + one.norm());
  if (f.unitary) f.partial_isometry = true;

  const Complex c = hs_inner(one, x) / static_cast<double>(x.algebra().matrix_dim());
  f.scalar_multiple_of_identity = (x - c * one).norm() <= tol * (1.0 + nx);
  return f;
}

// A normal faithful state: blockwise densities rho_i, hermitian and strictly
// positive definite, with sum_i tr(rho_i) = 1. Evaluation is
// omega(x) = sum_i tr(rho_i x_i).
class State {
 public:
  State(BlockAlgebra algebra, std::vector<Matrix> density_blocks)
      : algebra_(std::move(algebra)), density_(std::move(density_blocks)) {
    if (static_cast<int>(density_.size()) != algebra_.num_blocks()) {
      throw std::invalid_argument("State: density block count mismatch");
    }
    Complex tr(0.0, 0.0);
    for (int i = 0; i < algebra_.num_blocks(); ++i) {
      const int n = algebra_.block_size(i);
      const Matrix& rho = density_[i];
      if (rho.rows() != n || rho.cols() != n) {
        throw std::invalid_argument("State: density block shape mismatch");
      }
      if ((rho - rho.adjoint()).norm() > 1e-10 * (1.0 + rho.norm())) {
        throw std::invalid_argument("State: density block is not hermitian");
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
      if (es.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("State: density must be strictly positive (faithful)");
      }
      tr += rho.trace();
    }
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
      throw std::invalid_argument("State: densities must sum to unit trace");
    }
  }

  const BlockAlgebra& algebra() const { return algebra_; }
  const Matrix& density_block(int i) const { return density_[i]; }

  Complex evaluate(const AlgElement& x) const {
    detail::require_same_algebra(algebra_, x.algebra(), "State::evaluate");
    Complex s(0.0, 0.0);
    for (int i = 0; i < algebra_.num_blocks(); ++i) {
      s += (density_[i] * x.block(i)).trace();
    }
    return s;
  }

  AlgElement density_element() const {
    return AlgElement(algebra_, density_);
  }

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> density_;
};

}  // namespace perispec
