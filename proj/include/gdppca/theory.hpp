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
#ifndef GDPPCA_THEORY_HPP_
#define GDPPCA_THEORY_HPP_

/*!@file
 * Monte Carlo evaluations of the closed-form eigenvalues of K_g under an
 * elliptical model with dispersion eigenvalues lambda_1..lambda_d:
 *
 *   phi_sph,l  = E[ lambda_l Y_l^2 / sum_j lambda_j Y_j^2 ],   Y ~ N(0, I_d)
 *   phi_w,l(r) = E[ min(R^2, r^2 / sum_j lambda_j S_j^2) lambda_l S_l^2 ]
 *
 * with R^2 = (X - X')^T Sigma^{-1} (X - X') / 2 and S uniform on the sphere,
 * independent. Also the deterministic robustness checks: the breakdown lower
 * bound and the Davis-Kahan style deviation bound under alpha-corruption.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gdppca/errors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/rng.hpp"
#include "gdppca/samplers.hpp"
#include "gdppca/transforms.hpp"

namespace gdppca {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
};

// Welford running mean / variance.
class MeanAccumulator {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  McEstimate estimate() const {
    McEstimate out;
    out.value = mean_;
    out.samples = count_;
    if (count_ > 1) {
      const double var = m2_ / static_cast<double>(count_ - 1);
      out.std_error = std::sqrt(var / static_cast<double>(count_));
    }
    return out;
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

namespace detail {
inline void check_eigvals(const Vector& eigvals) {
  if (eigvals.size() < 1) throw DimensionError("eigenvalue list is empty");
  for (Index i = 0; i < eigvals.size(); ++i) {
    if (!(eigvals(i) > 0.0)) throw ConfigError("eigenvalues must be positive");
  }
}

inline void check_ell(Index ell, Index dim) {
  if (ell < 1 || ell > dim) {
    throw DimensionError("index ell=" + std::to_string(ell) + " outside [1, " +
                         std::to_string(dim) + "]");
  }
}
}  // namespace detail

/// phi_sph,l for every l from one shared set of draws. Per draw the d
/// summands add to exactly one, so the estimates do too (up to rounding).
inline std::vector<McEstimate> phi_sph_all(const Vector& eigvals, std::size_t samples,
                                           RngStream& rng) {
  detail::check_eigvals(eigvals);
  if (samples < 1) throw ConfigError("phi_sph: samples must be >= 1");
  const Index d = eigvals.size();
  std::vector<MeanAccumulator> acc(static_cast<std::size_t>(d));
  Vector w(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Index j = 0; j < d; ++j) {
      const double y = rng.normal();
      w(j) = eigvals(j) * y * y;
    }
    const double total = w.sum();
    for (Index j = 0; j < d; ++j) acc[static_cast<std::size_t>(j)].add(w(j) / total);
  }
  std::vector<McEstimate> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back(a.estimate());
  return out;
}

// ell is 1-based.
inline McEstimate phi_sph(const Vector& eigvals, Index ell, std::size_t samples,
                          RngStream& rng) {
  detail::check_ell(ell, eigvals.size());
  return phi_sph_all(eigvals, samples, rng)[static_cast<std::size_t>(ell - 1)];
}

/// One draw of R^2 for the given elliptical generator.
inline double draw_r_squared(ModelKind kind, Index dim, RngStream& rng) {
  double sq = 0.0;
  switch (kind) {
    case ModelKind::kGaussian:
      for (Index j = 0; j < dim; ++j) {
        const double diff = rng.normal() - rng.normal();
        sq += diff * diff;
      }
      return 0.5 * sq;
    case ModelKind::kStudentT1: {
      Vector a(dim);
      Vector b(dim);
      for (Index j = 0; j < dim; ++j) a(j) = rng.normal();
      const double va = std::abs(rng.normal());
      for (Index j = 0; j < dim; ++j) b(j) = rng.normal();
      const double vb = std::abs(rng.normal());
      return 0.5 * (a / va - b / vb).squaredNorm();
    }
    case ModelKind::kContaminatedGaussian:
      break;
  }
  throw ConfigError("R^2 law is only defined for elliptical models (gaussian, t1)");
}

/// Shared-draw estimates for the winsorized eigenvalue and the two sides of
/// r^2 phi_sph,l P(R^2 >= r^2/lambda_d) <= phi_w,l(r) <= r^2 phi_sph,l.
struct WinsSandwich {
  McEstimate phi_wins;
  McEstimate phi_sph;
  McEstimate tail_prob;  // P(R^2 >= r^2 / lambda_d)
  double radius = 0.0;

  double lower() const { return radius * radius * tail_prob.value * phi_sph.value; }
  double lower_se() const {
    const double r2 = radius * radius;
    return r2 * std::hypot(tail_prob.std_error * phi_sph.value,
                           tail_prob.value * phi_sph.std_error);
  }
  double upper() const { return radius * radius * phi_sph.value; }
  double upper_se() const { return radius * radius * phi_sph.std_error; }

  // Each side holds within `k` combined standard errors.
  bool lower_holds(double k = 3.0) const {
    return lower() <= phi_wins.value + k * std::hypot(lower_se(), phi_wins.std_error);
  }
  bool upper_holds(double k = 3.0) const {
    return phi_wins.value <= upper() + k * std::hypot(upper_se(), phi_wins.std_error);
  }
};

inline WinsSandwich wins_sandwich(const Vector& eigvals, Index ell, double radius,
                                  ModelKind kind, std::size_t samples, RngStream& rng) {
  detail::check_eigvals(eigvals);
  detail::check_ell(ell, eigvals.size());
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  if (samples < 1) throw ConfigError("phi_wins: samples must be >= 1");
  const Index d = eigvals.size();
  const double lambda_min = eigvals.minCoeff();
  const double r2 = radius * radius;
  MeanAccumulator wins, sph, tail;
  Vector s(d);
  for (std::size_t k = 0; k < samples; ++k) {
    const double rsq = draw_r_squared(kind, d, rng);
    for (Index j = 0; j < d; ++j) s(j) = rng.normal();
    s /= s.norm();
    const double quad = (eigvals.array() * s.array().square()).sum();
    const double term = eigvals(ell - 1) * s(ell - 1) * s(ell - 1);
    wins.add(std::min(rsq, r2 / quad) * term);
    sph.add(term / quad);
    tail.add(rsq >= r2 / lambda_min ? 1.0 : 0.0);
  }
  return WinsSandwich{wins.estimate(), sph.estimate(), tail.estimate(), radius};
}

inline McEstimate phi_wins(const Vector& eigvals, Index ell, double radius, ModelKind kind,
                           std::size_t samples, RngStream& rng) {
  return wins_sandwich(eigvals, ell, radius, kind, samples, rng).phi_wins;
}

/// Standard error of the eigenvalue of kendall_u along the unit direction u,
/// from the Hoeffding projection of the U-statistic:
/// se = 2 sd_i(h_i) / sqrt(n), h_i = mean_{j != i} (u^T g((X_j - X_i)/sqrt 2))^2.
inline double kendall_eigenvalue_se(const Dataset& s, const Transform& g, const Vector& u) {
  detail::require_pairs(s, "kendall_eigenvalue_se");
  const Index n = s.n();
  const Matrix& x = s.rows();
  Vector h = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Vector w = (x.row(j) - x.row(i)).transpose() / std::numbers::sqrt2;
      const double proj = u.dot(g.apply(w));
      const double k = proj * proj;
      h(i) += k;
      h(j) += k;
    }
  }
  h /= static_cast<double>(n - 1);
  const double mean = h.mean();
  const double var = (h.array() - mean).square().sum() / static_cast<double>(n - 1);
  return 2.0 * std::sqrt(var / static_cast<double>(n));
}

/// (phi_m - phi_{m+1}) / (8 ||g||_inf^2) from the spectrum of k_hat.
inline double breakdown_bound(const SymMat& k_hat, const Transform& g, Index m) {
  if (m < 1 || m >= k_hat.dim()) {
    throw DimensionError("breakdown_bound: need 1 <= m < d, got m=" + std::to_string(m));
  }
  const EigenPairs e = eigh(k_hat);
  const double gap = std::max(0.0, e.values(m - 1) - e.values(m));
  return gap / (8.0 * g.sup_norm() * g.sup_norm());
}

enum class Attack { kFarOrthogonal, kDuplicate, kNearZero, kMixed };

inline const char* attack_name(Attack a) {
  switch (a) {
    case Attack::kFarOrthogonal: return "far_orthogonal";
    case Attack::kDuplicate: return "duplicate";
    case Attack::kNearZero: return "near_zero";
    case Attack::kMixed: return "mixed";
  }
  return "unknown";
}

struct CorruptionTrial {
  Attack attack;
  Index replaced = 0;
  double sin_theta = 0.0;
  double bound = 0.0;  // 8 (k/n) ||g||^2 / gap; +inf when the gap is zero
  bool holds = true;
};

struct CorruptionReport {
  std::vector<CorruptionTrial> trials;
  bool all_hold = true;
  double max_ratio = 0.0;  // max sin_theta / bound over trials with finite bound
};

/// Replaces k = floor(alpha n) random rows using a fixed attack menu (cycled
/// per trial) and checks sin Theta(V_m(S_alpha), V_m(S)) <= 8 (k/n) ||g||^2 /
/// (phi_m - phi_{m+1}) with the gap taken from kendall_u(S).
///
/// Attack menu:
///   far_orthogonal  rows at 1e3 * (max row norm) along a random direction
///                   orthogonal to V_m(S), with random sign and magnitude
///   duplicate       copies of randomly chosen surviving rows
///   near_zero       Gaussian rows scaled by 1e-9
///   mixed           each replaced row picks one of the above at random
inline CorruptionReport corruption_deviation_report(const Dataset& s, const Transform& g,
                                                    Index m, double alpha, std::size_t trials,
                                                    RngStream& rng) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
  const Index n = s.n();
  const Index d = s.dim();
  if (m < 1 || m >= d) throw DimensionError("corruption check needs 1 <= m < d");
  const EigenPairs base = eigh(kendall_u(s, g));
  const OrthoFrame v_base = top_m(base, m);
  const double gap = base.values(m - 1) - base.values(m);
  const Index k = static_cast<Index>(std::floor(alpha * static_cast<double>(n)));
  const double frac = static_cast<double>(k) / static_cast<double>(n);
  const double g2 = g.sup_norm() * g.sup_norm();
  const double bound = gap > 0.0 ? 8.0 * frac * g2 / gap
                                 : std::numeric_limits<double>::infinity();
  const double far = 1e3 * std::max(1.0, s.rows().rowwise().norm().maxCoeff());
  const Matrix complement = Matrix::Identity(d, d) - v_base.projector();

  CorruptionReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const Attack attack = static_cast<Attack>(t % 4);
    Matrix x = s.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
      const Index pick = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - i)));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick)]);
    }
    Vector dir(d);
    for (Index j = 0; j < d; ++j) dir(j) = rng.normal();
    dir = complement * dir;
    dir /= dir.norm();
    for (Index i = 0; i < k; ++i) {
      const Index row = order[static_cast<std::size_t>(i)];
      Attack local = attack;
      if (attack == Attack::kMixed) local = static_cast<Attack>(rng.uniform_index(3));
      switch (local) {
        case Attack::kFarOrthogonal: {
          const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
          x.row(row) = (sign * far * (0.5 + rng.uniform())) * dir.transpose();
          break;
        }
        case Attack::kDuplicate: {
          const Index src = order[static_cast<std::size_t>(
              k + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - k))))];
          x.row(row) = s.row(src);
          break;
        }
        case Attack::kNearZero:
        case Attack::kMixed:
          for (Index j = 0; j < d; ++j) x(row, j) = 1e-9 * rng.normal();
          break;
      }
    }
    const OrthoFrame v_corrupt = top_m(eigh(kendall_u(Dataset(std::move(x)), g)), m);
    CorruptionTrial trial;
    trial.attack = attack;
    trial.replaced = k;
    trial.sin_theta = sin_theta(v_corrupt, v_base);
    trial.bound = bound;
    trial.holds = trial.sin_theta <= bound + 1e-10;
    if (std::isfinite(bound) && bound > 0.0) {
      report.max_ratio = std::max(report.max_ratio, trial.sin_theta / bound);
    }
    report.all_hold = report.all_hold && trial.holds;
    report.trials.push_back(trial);
  }
  return report;
}

inline bool corruption_deviation_check(const Dataset& s, const Transform& g, Index m,
                                       double alpha, std::size_t trials, RngStream& rng) {
  return corruption_deviation_report(s, g, m, alpha, trials, rng).all_hold;
}

}  // namespace gdppca

#endif  // GDPPCA_THEORY_HPP_
