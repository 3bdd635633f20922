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
#ifndef GDPPCA_KENDALL_HPP_
#define GDPPCA_KENDALL_HPP_

/*!@file
 * Estimators of the generalized multivariate Kendall's tau matrix
 *
 *   K_g = E[ g((X - X')/sqrt 2) g((X - X')/sqrt 2)^T ].
 *
 * kendall_u averages the kernel over all n(n-1)/2 pairs (second-order
 * U-statistic). kendall_paired uses only the floor(n/2) disjoint pairs
 * (i, i + floor(n/2)) and is kept as a lower-efficiency baseline.
 */

#include <numbers>
#include <string>
#include <utility>

#include "gdppca/errors.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/transforms.hpp"

namespace gdppca {

/// n observations of dimension d, one per row. Immutable after construction.
class Dataset {
 public:
  explicit Dataset(Matrix rows) : rows_(std::move(rows)) {
    if (rows_.cols() < 1) throw DimensionError("Dataset needs d >= 1");
  }

  Index n() const { return rows_.rows(); }
  Index dim() const { return rows_.cols(); }
  const Matrix& rows() const { return rows_; }
  auto row(Index i) const { return rows_.row(i); }

 private:
  Matrix rows_;
};

namespace detail {
inline void require_pairs(const Dataset& s, const char* op) {
  if (s.n() < 2) {
    throw InsufficientDataError(std::string(op) + ": need n >= 2 observations, got " +
                                std::to_string(s.n()));
  }
}
}  // namespace detail

/// Full U-statistic estimate of K_g.
///
/// For each i the differences to rows i+1..n-1 are formed as one block, scaled
/// row-wise by g, and accumulated with a rank-k update. The block order is
/// fixed, so the result is bit-reproducible.
inline SymMat kendall_u(const Dataset& s, const Transform& g) {
  detail::require_pairs(s, "kendall_u");
  const Index n = s.n();
  const Index d = s.dim();
  const Matrix& x = s.rows();
  Matrix acc = Matrix::Zero(d, d);
  Matrix block(n - 1, d);
  for (Index i = 0; i + 1 < n; ++i) {
    const Index count = n - i - 1;
    auto w = block.topRows(count);
    w = (x.bottomRows(count).rowwise() - x.row(i)) * (1.0 / std::numbers::sqrt2);
    for (Index k = 0; k < count; ++k) {
      w.row(k) *= g.scale_for_norm(Transform::robust_norm(w.row(k)));
    }
    acc.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose());
  }
  acc *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
  return SymMat::from_lower(acc);
}

/// Paired-difference estimate using W_i = (X_{i+h} - X_i)/sqrt 2, h = floor(n/2).
/// With odd n the last row is never read.
inline SymMat kendall_paired(const Dataset& s, const Transform& g) {
  detail::require_pairs(s, "kendall_paired");
  const Index half = s.n() / 2;
  const Matrix& x = s.rows();
  Matrix w = (x.middleRows(half, half) - x.topRows(half)) * (1.0 / std::numbers::sqrt2);
  for (Index k = 0; k < half; ++k) {
    w.row(k) *= g.scale_for_norm(Transform::robust_norm(w.row(k)));
  }
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  acc.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose());
  acc /= static_cast<double>(half);
  return SymMat::from_lower(acc);
}

// Frobenius sensitivity bound 4 ||g||_inf^2 / n of kendall_u.
inline double sensitivity_bound(const Transform& g, Index n) {
  if (n < 2) throw InsufficientDataError("sensitivity_bound: need n >= 2");
  return 4.0 * g.sup_norm() * g.sup_norm() / static_cast<double>(n);
}

}  // namespace gdppca

#endif  // GDPPCA_KENDALL_HPP_
