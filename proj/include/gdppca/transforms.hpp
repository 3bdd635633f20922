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
#ifndef GDPPCA_TRANSFORMS_HPP_
#define GDPPCA_TRANSFORMS_HPP_

#include <cmath>
#include <limits>
#include <string>

#include "gdppca/errors.hpp"
#include "gdppca/linalg.hpp"

namespace gdppca {

enum class TransformKind { kSpherical, kWinsorized };

/// Generalized spatial sign g(t) = xi(||t||) * t / ||t||.
///
/// Two members are provided: the spherical transform (xi = 1) and
/// winsorization at radius r (xi(s) = min(r, s)). Both are bounded, with
/// sup_norm 1 and r respectively. g(0) is defined as 0, and any t with
/// ||t|| < kZeroNorm is treated as 0.
class Transform {
 public:
  static constexpr double kZeroNorm = 1e-300;

  static Transform spherical() { return Transform(TransformKind::kSpherical, 1.0); }

  static Transform winsorized(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw ConfigError("winsorization radius must be positive and finite, got " +
                        std::to_string(radius));
    }
    return Transform(TransformKind::kWinsorized, radius);
  }

  TransformKind kind() const { return kind_; }
  // Meaningful for winsorized only; 1 for spherical.
  double radius() const { return radius_; }
  double sup_norm() const { return radius_; }

  std::string name() const {
    return kind_ == TransformKind::kSpherical ? "sph" : "wins";
  }

  // Multiplier applied to t given ||t||, i.e. xi(norm) / norm, or 0 below
  // the zero guard.
  double scale_for_norm(double norm) const {
    if (!(norm >= kZeroNorm)) return 0.0;
    if (kind_ == TransformKind::kSpherical) return 1.0 / norm;
    return norm <= radius_ ? 1.0 : radius_ / norm;
  }

  template <typename Derived>
  Vector apply(const Eigen::MatrixBase<Derived>& t) const {
    return scale_for_norm(robust_norm(t)) * t;
  }

  // Euclidean norm without overflow or underflow for extreme entries.
  template <typename Derived>
  static double robust_norm(const Eigen::MatrixBase<Derived>& t) {
    const double sq = t.squaredNorm();
    if (sq > 1e-280 && sq < 1e280) return std::sqrt(sq);
    return t.stableNorm();
  }

  friend bool operator==(const Transform& a, const Transform& b) {
    return a.kind_ == b.kind_ && a.radius_ == b.radius_;
  }

 private:
  Transform(TransformKind kind, double radius) : kind_(kind), radius_(radius) {}

  TransformKind kind_;
  double radius_;
};

}  // namespace gdppca

#endif  // GDPPCA_TRANSFORMS_HPP_
