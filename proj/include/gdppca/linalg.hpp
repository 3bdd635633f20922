// Copyright 2026 The gdppca Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#ifndef GDPPCA_LINALG_HPP_
#define GDPPCA_LINALG_HPP_

/*!@file
 * Symmetric-matrix primitives shared by every estimator in the library.
 *
 * - SymMat: a dense d x d symmetric matrix, exactly symmetric by construction.
 * - OrthoFrame: d x m matrix with orthonormal columns (a point on the Stiefel
 *   manifold), used for estimated and true principal directions.
 * - vecd / vecd_inv: the isometry between Sym(d) with the Frobenius norm and
 *   R^{d(d+1)/2} with the Euclidean norm.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "gdppca/errors.hpp"

namespace gdppca {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class SymMat {
 public:
  explicit SymMat(Index dim) : entries_(Matrix::Zero(dim, dim)) {
    if (dim < 1) throw DimensionError("SymMat dimension must be >= 1");
  }

  static SymMat identity(Index dim) {
    SymMat out(dim);
    out.entries_.setIdentity();
    return out;
  }

  static SymMat diagonal(const Vector& diag) {
    SymMat out(diag.size());
    out.entries_.diagonal() = diag;
    return out;
  }

  // Reads the upper triangle (diagonal included) and mirrors it.
  static SymMat from_upper(const Matrix& a) {
    SymMat out(check_square(a));
    out.entries_.triangularView<Eigen::Upper>() = a.triangularView<Eigen::Upper>();
    out.entries_.triangularView<Eigen::StrictlyLower>() =
        a.transpose().triangularView<Eigen::StrictlyLower>();
    return out;
  }

  // Reads the lower triangle (diagonal included) and mirrors it.
  static SymMat from_lower(const Matrix& a) {
    return from_upper(a.transpose());
  }

  Index dim() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  const Matrix& matrix() const { return entries_; }

  double frobenius_norm() const { return entries_.norm(); }
  double trace() const { return entries_.trace(); }

  SymMat& operator+=(const SymMat& other) {
    if (other.dim() != dim()) throw DimensionError("SymMat dimension mismatch in +=");
    entries_ += other.entries_;
    return *this;
  }
  SymMat& operator-=(const SymMat& other) {
    if (other.dim() != dim()) throw DimensionError("SymMat dimension mismatch in -=");
    entries_ -= other.entries_;
    return *this;
  }
  SymMat& operator*=(double s) {
    entries_ *= s;
    return *this;
  }

  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

  friend bool operator==(const SymMat& a, const SymMat& b) {
    return a.dim() == b.dim() && a.entries_ == b.entries_;
  }

 private:
  static Index check_square(const Matrix& a) {
    if (a.rows() != a.cols()) {
      throw DimensionError("SymMat requires a square matrix, got " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    return a.rows();
  }

  Matrix entries_;
};

// Orthonormality residual ||V^T V - I||_F.
inline double orthonormality_error(const Matrix& v) {
  return (v.transpose() * v - Matrix::Identity(v.cols(), v.cols())).norm();
}

class OrthoFrame {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit OrthoFrame(Matrix columns) : columns_(std::move(columns)) {
    if (columns_.cols() < 1 || columns_.cols() > columns_.rows()) {
      throw DimensionError("OrthoFrame needs 1 <= m <= d, got d=" +
                           std::to_string(columns_.rows()) +
                           " m=" + std::to_string(columns_.cols()));
    }
    const double err = orthonormality_error(columns_);
    if (!(err <= kTolerance)) {
      std::ostringstream msg;
      msg << "columns are not orthonormal: ||V^T V - I||_F = " << err;
      throw NumericalError(msg.str());
    }
  }

  // First m standard basis vectors of R^d.
  static OrthoFrame standard(Index dim, Index rank) {
    return OrthoFrame(Matrix::Identity(dim, rank));
  }

  Index dim() const { return columns_.rows(); }
  Index rank() const { return columns_.cols(); }
  const Matrix& matrix() const { return columns_; }
  Vector column(Index j) const { return columns_.col(j); }

  // Orthogonal projector V V^T.
  Matrix projector() const { return columns_ * columns_.transpose(); }

  friend bool operator==(const OrthoFrame& a, const OrthoFrame& b) {
    return a.columns_.rows() == b.columns_.rows() &&
           a.columns_.cols() == b.columns_.cols() && a.columns_ == b.columns_;
  }

 private:
  Matrix columns_;
};

struct EigenPairs {
  Vector values;  // non-increasing
  OrthoFrame vectors;
};

inline Index vecd_length(Index dim) { return dim * (dim + 1) / 2; }

/// Isometric vectorization of a symmetric matrix.
///
/// Layout: the d diagonal entries in index order, then the strict upper
/// triangle row-major ((0,1), (0,2), ..., (0,d-1), (1,2), ...), each
/// off-diagonal entry multiplied by sqrt(2). ||vecd(A)||_2 == ||A||_F.
inline Vector vecd(const SymMat& a) {
  const Index d = a.dim();
  Vector out(vecd_length(d));
  for (Index i = 0; i < d; ++i) out(i) = a(i, i);
  Index k = d;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) out(k++) = std::numbers::sqrt2 * a(i, j);
  }
  return out;
}

inline SymMat vecd_inv(const Vector& v, Index dim) {
  if (dim < 1 || v.size() != vecd_length(dim)) {
    throw DimensionError("vecd_inv: length " + std::to_string(v.size()) +
                         " does not match d(d+1)/2 for d=" + std::to_string(dim));
  }
  Matrix upper = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) upper(i, i) = v(i);
  Index k = dim;
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) upper(i, j) = v(k++) / std::numbers::sqrt2;
  }
  return SymMat::from_upper(upper);
}

// Flips each column so its largest-magnitude entry is nonnegative; ties go to
// the lowest row index.
inline void canonicalize_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (vectors(best, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

/// Symmetric eigendecomposition, eigenvalues in non-increasing order.
inline EigenPairs eigh(const SymMat& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigh: solver did not converge (d=" << a.dim()
        << ", ||A||_F=" << a.frobenius_norm() << ", max|a_ij|="
        << a.matrix().cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
  Vector values = solver.eigenvalues().reverse();
  Matrix vectors = solver.eigenvectors().rowwise().reverse();
  canonicalize_signs(vectors);
  return EigenPairs{std::move(values), OrthoFrame(std::move(vectors))};
}

inline OrthoFrame top_m(const EigenPairs& e, Index m) {
  if (m < 1 || m > e.vectors.dim()) {
    throw DimensionError("top_m: m=" + std::to_string(m) + " outside [1, " +
                         std::to_string(e.vectors.dim()) + "]");
  }
  return OrthoFrame(e.vectors.matrix().leftCols(m));
}

namespace detail {
inline void check_same_shape(const OrthoFrame& a, const OrthoFrame& b, const char* op) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) {
    throw DimensionError(std::string(op) + ": frames differ in shape (" +
                         std::to_string(a.dim()) + "x" + std::to_string(a.rank()) + " vs " +
                         std::to_string(b.dim()) + "x" + std::to_string(b.rank()) + ")");
  }
}
}  // namespace detail

/// Sine of the largest principal angle between col(v1) and col(v2).
///
/// Evaluated as the largest singular value of (I - V1 V1^T) V2, which equals
/// sin(arccos(sigma_min(V1^T V2))) and keeps full relative accuracy when the
/// subspaces nearly coincide.
inline double sin_theta(const OrthoFrame& v1, const OrthoFrame& v2) {
  detail::check_same_shape(v1, v2, "sin_theta");
  const Matrix& a = v1.matrix();
  const Matrix& b = v2.matrix();
  // Symmetrize the evaluation so the result does not depend on argument order
  // beyond rounding.
  const Matrix r1 = b - a * (a.transpose() * b);
  const Matrix r2 = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Matrix> s1(r1);
  Eigen::JacobiSVD<Matrix> s2(r2);
  const double s = 0.5 * (s1.singularValues()(0) + s2.singularValues()(0));
  return std::clamp(s, 0.0, 1.0);
}

// ||V1 V1^T - V2 V2^T||_F.
inline double proj_frob(const OrthoFrame& v1, const OrthoFrame& v2) {
  detail::check_same_shape(v1, v2, "proj_frob");
  return (v1.projector() - v2.projector()).norm();
}

/// Nearest point on the Stiefel manifold: U W^T from the thin SVD A = U S W^T.
inline OrthoFrame stiefel_project(const Matrix& a) {
  if (a.cols() < 1 || a.cols() > a.rows()) {
    throw DimensionError("stiefel_project: need 1 <= m <= d");
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!std::isfinite(smax) || !(smin > 1e-12 * smax) || smax == 0.0) {
    std::ostringstream msg;
    msg << "stiefel_project: input is rank deficient (sigma_min=" << smin
        << ", sigma_max=" << smax << ")";
    throw NumericalError(msg.str());
  }
  Matrix q = svd.matrixU() * svd.matrixV().transpose();
  return OrthoFrame(std::move(q));
}

}  // namespace gdppca

#endif  // GDPPCA_LINALG_HPP_
