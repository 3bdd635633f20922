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
#ifndef GDPPCA_SAMPLERS_HPP_
#define GDPPCA_SAMPLERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gdppca/errors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/rng.hpp"

namespace gdppca {

/// Two-spike dispersion Sigma = (l1 - ld) v1 v1^T + (l2 - ld) v2 v2^T + ld I.
class SpikedModel {
 public:
  SpikedModel(double lambda_1, double lambda_2, double lambda_d, Vector v1, Vector v2)
      : lambda_1_(lambda_1), lambda_2_(lambda_2), lambda_d_(lambda_d),
        v1_(std::move(v1)), v2_(std::move(v2)) {
    if (!(lambda_1 > lambda_2 && lambda_2 > lambda_d && lambda_d > 0.0)) {
      throw ConfigError("SpikedModel needs lambda_1 > lambda_2 > lambda_d > 0");
    }
    if (v1_.size() != v2_.size() || v1_.size() < 2) {
      throw DimensionError("SpikedModel spikes must share a dimension >= 2");
    }
    if (std::abs(v1_.norm() - 1.0) > 1e-12 || std::abs(v2_.norm() - 1.0) > 1e-12 ||
        std::abs(v1_.dot(v2_)) > 1e-12) {
      throw ConfigError("SpikedModel spikes must be orthonormal");
    }
  }

  Index dim() const { return v1_.size(); }
  double lambda_1() const { return lambda_1_; }
  double lambda_2() const { return lambda_2_; }
  double lambda_d() const { return lambda_d_; }
  const Vector& v1() const { return v1_; }
  const Vector& v2() const { return v2_; }

  SymMat sigma() const {
    Matrix s = (lambda_1_ - lambda_d_) * v1_ * v1_.transpose() +
               (lambda_2_ - lambda_d_) * v2_ * v2_.transpose();
    s.diagonal().array() += lambda_d_;
    return SymMat::from_upper(s);
  }

  // Full spectrum (l1, l2, ld, ..., ld).
  Vector eigenvalues() const {
    Vector out = Vector::Constant(dim(), lambda_d_);
    out(0) = lambda_1_;
    out(1) = lambda_2_;
    return out;
  }

  // [v1, v2]
  OrthoFrame leading_frame() const {
    Matrix v(dim(), 2);
    v.col(0) = v1_;
    v.col(1) = v2_;
    return OrthoFrame(std::move(v));
  }

 private:
  double lambda_1_;
  double lambda_2_;
  double lambda_d_;
  Vector v1_;
  Vector v2_;
};

/// (l1, l2, ld) = (10, 5, 1), v1 = (1,1,1,1,0,...)/2, v2 = (1,-1,1,-1,0,...)/2.
inline SpikedModel paper_model(Index dim) {
  if (dim < 4) throw DimensionError("paper_model needs d >= 4, got " + std::to_string(dim));
  Vector v1 = Vector::Zero(dim);
  Vector v2 = Vector::Zero(dim);
  v1.head(4) << 0.5, 0.5, 0.5, 0.5;
  v2.head(4) << 0.5, -0.5, 0.5, -0.5;
  return SpikedModel(10.0, 5.0, 1.0, std::move(v1), std::move(v2));
}

/// Symmetric PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-8, 0) are clamped to zero; anything lower is rejected.
inline SymMat sqrt_psd(const SymMat& a) {
  const EigenPairs e = eigh(a);
  const double smallest = e.values(e.values.size() - 1);
  if (smallest < -1e-8) {
    throw NotPsdError("sqrt_psd: smallest eigenvalue " + std::to_string(smallest) + " < -1e-8");
  }
  const Vector root = e.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = e.vectors.matrix();
  const Matrix out = v * root.asDiagonal() * v.transpose();
  return SymMat::from_upper(out);
}

enum class ModelKind { kGaussian, kStudentT1, kContaminatedGaussian };

inline std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGaussian: return "gaussian";
    case ModelKind::kStudentT1: return "t1";
    case ModelKind::kContaminatedGaussian: return "contaminated";
  }
  return "unknown";
}

inline ModelKind parse_model(const std::string& name) {
  if (name == "gaussian") return ModelKind::kGaussian;
  if (name == "t1") return ModelKind::kStudentT1;
  if (name == "contaminated") return ModelKind::kContaminatedGaussian;
  throw ConfigError("unknown model '" + name + "' (expected gaussian, t1, contaminated)");
}

struct DataModel {
  ModelKind kind;
  SpikedModel base;
  double contamination_rate = 0.0;
  Vector outlier_center;
  double outlier_sd = 1.0;

  static DataModel gaussian(SpikedModel base) {
    return DataModel{ModelKind::kGaussian, std::move(base), 0.0, Vector(), 1.0};
  }
  static DataModel student_t1(SpikedModel base) {
    return DataModel{ModelKind::kStudentT1, std::move(base), 0.0, Vector(), 1.0};
  }
  static DataModel contaminated(SpikedModel base, double rate, Vector center, double sd) {
    if (!(rate >= 0.0 && rate < 1.0)) throw ConfigError("contamination rate must lie in [0, 1)");
    if (!(sd > 0.0)) throw ConfigError("outlier sd must be positive");
    if (center.size() != base.dim()) throw DimensionError("outlier center has wrong dimension");
    if (std::abs(center.dot(base.v1())) > 1e-10 || std::abs(center.dot(base.v2())) > 1e-10) {
      throw ConfigError("outlier center must be orthogonal to both spikes");
    }
    return DataModel{ModelKind::kContaminatedGaussian, std::move(base), rate, std::move(center), sd};
  }

  // 5% replacement by N(v_perp, 0.05^2 I), v_perp = 2.5 l1 (0,1,0,-1,0,...)/sqrt 2.
  static DataModel paper_contaminated(SpikedModel base) {
    Vector center = Vector::Zero(base.dim());
    const double scale = 2.5 * base.lambda_1() / std::sqrt(2.0);
    center(1) = scale;
    center(3) = -scale;
    return contaminated(std::move(base), 0.05, std::move(center), 0.05);
  }

  static DataModel paper(ModelKind kind, Index dim) {
    switch (kind) {
      case ModelKind::kGaussian: return gaussian(paper_model(dim));
      case ModelKind::kStudentT1: return student_t1(paper_model(dim));
      case ModelKind::kContaminatedGaussian: return paper_contaminated(paper_model(dim));
    }
    throw ConfigError("unknown model kind");
  }
};

inline Index contaminated_count(double rate, Index n) {
  return static_cast<Index>(std::floor(rate * static_cast<double>(n)));
}

struct Sample {
  Dataset data;
  std::vector<Index> replaced;  // sorted; contaminated model only
};

/// Draws n rows. Normals are consumed row by row (d per row, Z then the
/// chi-square(1) draw for t1); contamination indices come from a
/// partial Fisher-Yates shuffle after all base rows are drawn.
inline Sample sample_with_labels(const DataModel& model, Index n, RngStream& rng) {
  if (n < 1) throw InsufficientDataError("sample: need n >= 1");
  const Index d = model.base.dim();
  const Matrix root = sqrt_psd(model.base.sigma()).matrix();
  Matrix z(n, d);
  Vector scale = Vector::Ones(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) z(i, j) = rng.normal();
    if (model.kind == ModelKind::kStudentT1) {
      const double g = rng.normal();
      scale(i) = 1.0 / std::abs(g);  // 1 / sqrt(chi-square(1))
    }
  }
  Matrix x = z * root;  // root is symmetric
  if (model.kind == ModelKind::kStudentT1) x = scale.asDiagonal() * x;

  std::vector<Index> replaced;
  if (model.kind == ModelKind::kContaminatedGaussian) {
    const Index count = contaminated_count(model.contamination_rate, n);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index k = 0; k < count; ++k) {
      const Index pick =
          k + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - k)));
      std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick)]);
    }
    replaced.assign(order.begin(), order.begin() + count);
    std::sort(replaced.begin(), replaced.end());
    for (Index idx : replaced) {
      for (Index j = 0; j < d; ++j) {
        x(idx, j) = model.outlier_center(j) + model.outlier_sd * rng.normal();
      }
    }
  }
  return Sample{Dataset(std::move(x)), std::move(replaced)};
}

inline Dataset sample(const DataModel& model, Index n, RngStream& rng) {
  return sample_with_labels(model, n, rng).data;
}

}  // namespace gdppca

#endif  // GDPPCA_SAMPLERS_HPP_
