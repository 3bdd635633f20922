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
#ifndef GDPPCA_COMPETITORS_HPP_
#define GDPPCA_COMPETITORS_HPP_

/*!@file
 * Baseline private PCA methods used for comparison:
 *
 * - Analyze Gauss: Gaussian noise on the max-norm normalized sample
 *   covariance.
 * - SGPCA: Gaussian noise on the rank-m projector of the pairwise-difference
 *   covariance. The eigenvector sensitivity it relies on holds only with high
 *   probability, so it is not exactly (eps, delta)-DP.
 * - NSGGD: noisy stochastic geodesic gradient descent for L1-PCA on the
 *   Stiefel manifold, started from Analyze Gauss.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gdppca/errors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/mechanism.hpp"
#include "gdppca/rng.hpp"

namespace gdppca {

// ---------------------------------------------------------------------------
// Analyze Gauss

/// Steps 1-3: center, divide by the largest centered norm, then
/// (n-1)^{-1} sum Z_i Z_i^T. Frobenius sensitivity is at most 6/n.
inline SymMat analyze_gauss_covariance(const Dataset& s) {
  detail::require_pairs(s, "analyze_gauss");
  const Vector mean = s.rows().colwise().mean();
  Matrix z = s.rows().rowwise() - mean.transpose();
  const double max_norm = z.rowwise().norm().maxCoeff();
  if (!(max_norm > 0.0) || !std::isfinite(max_norm)) {
    throw DegenerateDataError("analyze_gauss: all rows are identical (max centered norm is " +
                              std::to_string(max_norm) + ")");
  }
  z /= max_norm;
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  acc.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  acc /= static_cast<double>(s.n() - 1);
  return SymMat::from_lower(acc);
}

inline double analyze_gauss_sigma(Index n, const PrivacyBudget& b) {
  return 6.0 * b.gaussian_factor() / (static_cast<double>(n) * b.epsilon());
}

inline OrthoFrame analyze_gauss(const Dataset& s, Index m, const PrivacyBudget& b,
                                RngStream& rng) {
  if (m < 1 || m > s.dim()) throw DimensionError("analyze_gauss: m outside [1, d]");
  const SymMat cov = analyze_gauss_covariance(s);
  return top_m(eigh(gauss_mech(cov, analyze_gauss_sigma(s.n(), b), rng)), m);
}

// ---------------------------------------------------------------------------
// SGPCA

struct SgpcaConfig {
  double delta_sens;  // eigenvector sensitivity
  Index rank;

  SgpcaConfig(double delta_sens_in, Index rank_in) : delta_sens(delta_sens_in), rank(rank_in) {
    if (!(delta_sens > 0.0) || !std::isfinite(delta_sens)) {
      throw ConfigError("SGPCA sensitivity must be positive");
    }
    if (rank < 1) throw ConfigError("SGPCA rank must be >= 1");
  }
};

// 4 (l_d/l_1 + sqrt(l_d/l_1)) sqrt(d (r + ln n)) / n, with the true
// eigenvalues supplied by the caller.
inline double sgpca_sensitivity(double lambda_1, double lambda_d, Index dim, Index rank,
                                Index n) {
  const double ratio = lambda_d / lambda_1;
  return 4.0 * (ratio + std::sqrt(ratio)) *
         std::sqrt(static_cast<double>(dim) *
                   (static_cast<double>(rank) + std::log(static_cast<double>(n)))) /
         static_cast<double>(n);
}

/// (1/h) sum_{i<h} Z_i Z_i^T with Z_i = (X_{h+i} - X_i)/sqrt 2, h = floor(n/2).
inline SymMat pairwise_covariance(const Dataset& s) {
  detail::require_pairs(s, "pairwise_covariance");
  const Index half = s.n() / 2;
  const Matrix z =
      (s.rows().middleRows(half, half) - s.rows().topRows(half)) * (1.0 / std::numbers::sqrt2);
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  acc.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  acc /= static_cast<double>(half);
  return SymMat::from_lower(acc);
}

inline double sgpca_noise_sd(const SgpcaConfig& cfg, const PrivacyBudget& b) {
  return std::sqrt(2.0 * cfg.delta_sens * cfg.delta_sens /
                   (b.epsilon() * b.epsilon()) * std::log(1.25 / b.delta()));
}

inline OrthoFrame sgpca(const Dataset& s, Index m, const PrivacyBudget& b,
                        const SgpcaConfig& cfg, RngStream& rng) {
  if (s.n() < 4) {
    throw InsufficientDataError("sgpca: need n >= 4, got " + std::to_string(s.n()));
  }
  if (m < 1 || m > s.dim()) throw DimensionError("sgpca: m outside [1, d]");
  const OrthoFrame v_hat = top_m(eigh(pairwise_covariance(s)), m);
  const double sd = sgpca_noise_sd(cfg, b);
  const Index d = s.dim();
  Matrix noisy = v_hat.projector();
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) noisy(i, j) += sd * rng.normal();
  }
  return top_m(eigh(SymMat::from_upper(noisy)), m);
}

// ---------------------------------------------------------------------------
// NSGGD

struct NsggdConfig {
  Index iterations;
  Index batch_size;
  std::vector<double> learning_rates;
  PrivacyBudget budget;

  NsggdConfig(Index iterations_in, Index batch_size_in, std::vector<double> rates,
              PrivacyBudget budget_in)
      : iterations(iterations_in),
        batch_size(batch_size_in),
        learning_rates(std::move(rates)),
        budget(budget_in) {
    if (iterations < 0) throw ConfigError("NSGGD iterations must be >= 0");
    if (batch_size < 1) throw ConfigError("NSGGD batch size must be >= 1");
    if (static_cast<Index>(learning_rates.size()) != iterations) {
      throw ConfigError("NSGGD needs one learning rate per iteration");
    }
    for (double eta : learning_rates) {
      if (!(eta > 0.0)) throw ConfigError("NSGGD learning rates must be positive");
    }
  }
};

inline Index nsggd_default_iterations(Index n) {
  return std::min(n * n, 200 * n);
}

/// T (default min(n^2, 200 n), or n^2 when full is set), B = max(floor(n
/// sqrt(eps / (8T))), 1), eta_k = 1/n^2. n is the input sample size.
inline NsggdConfig nsggd_default_config(Index n, const PrivacyBudget& b,
                                        Index iterations = -1) {
  const Index t = iterations >= 0 ? iterations : nsggd_default_iterations(n);
  Index batch = 1;
  if (t > 0) {
    const double raw = static_cast<double>(n) * std::sqrt(b.epsilon() / (8.0 * static_cast<double>(t)));
    batch = std::max<Index>(static_cast<Index>(std::floor(raw)), 1);
  }
  const double eta = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  return NsggdConfig(t, batch, std::vector<double>(static_cast<std::size_t>(t), eta), b);
}

/// Unit pair directions z_i = (X_{h+i} - X_i) / ||X_{h+i} - X_i||, h = floor(n/2).
/// A zero difference stays zero.
inline Matrix nsggd_pairs(const Dataset& s) {
  const Index half = s.n() / 2;
  Matrix z = s.rows().middleRows(half, half) - s.rows().topRows(half);
  const Transform unit = Transform::spherical();
  for (Index i = 0; i < half; ++i) z.row(i) *= unit.scale_for_norm(Transform::robust_norm(z.row(i)));
  return z;
}

inline constexpr double kNsggdZeroProjection = 1e-12;

// (1/B) sum ||(I - V V^T) x||_2 over the batch rows.
inline double nsggd_objective(const Matrix& v, const Matrix& batch) {
  double total = 0.0;
  for (Index k = 0; k < batch.rows(); ++k) {
    const Vector x = batch.row(k).transpose();
    total += (x - v * (v.transpose() * x)).norm();
  }
  return total / static_cast<double>(batch.rows());
}

/// Riemannian gradient of nsggd_objective at V:
/// -(1/B) sum (Q x)(x^T V) / ||Q x||, Q = I - V V^T. Points with
/// ||Q x|| < 1e-12 contribute nothing.
inline Matrix nsggd_batch_gradient(const Matrix& v, const Matrix& batch) {
  Matrix grad = Matrix::Zero(v.rows(), v.cols());
  for (Index k = 0; k < batch.rows(); ++k) {
    const Vector x = batch.row(k).transpose();
    const Vector coeffs = v.transpose() * x;
    const Vector residual = x - v * coeffs;
    const double r = residual.norm();
    if (!(r >= kNsggdZeroProjection)) continue;
    grad.noalias() -= residual * coeffs.transpose() / r;
  }
  return grad / static_cast<double>(batch.rows());
}

using NsggdObserver = std::function<void(Index iteration, const OrthoFrame& iterate)>;

inline OrthoFrame nsggd(const Dataset& s, Index m, const PrivacyBudget& b,
                        const NsggdConfig& cfg, RngStream& rng,
                        const NsggdObserver& observer = {}) {
  if (s.n() < 4) {
    throw InsufficientDataError("nsggd: need n >= 4, got " + std::to_string(s.n()));
  }
  if (m < 1 || m > s.dim()) throw DimensionError("nsggd: m outside [1, d]");
  if (cfg.budget.epsilon() != b.epsilon() || cfg.budget.delta() != b.delta()) {
    throw ConfigError("nsggd: config budget differs from the requested budget");
  }
  const Matrix z = nsggd_pairs(s);
  const Index half = z.rows();
  const PrivacyBudget split(b.epsilon() / 2.0, b.delta() / 2.0);
  const double t = static_cast<double>(cfg.iterations);
  const double sigma = static_cast<double>(cfg.batch_size) *
                       std::sqrt(2.0 * t * std::log(1.0 / split.delta())) /
                       (static_cast<double>(half) * static_cast<double>(half) * split.epsilon());

  RngStream init_rng = rng.substream(0);
  OrthoFrame v = analyze_gauss(Dataset(z), m, split, init_rng);
  if (observer) observer(0, v);

  Matrix batch(cfg.batch_size, s.dim());
  Matrix noise(s.dim(), m);
  for (Index k = 0; k < cfg.iterations; ++k) {
    for (Index b_i = 0; b_i < cfg.batch_size; ++b_i) {
      batch.row(b_i) = z.row(static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(half))));
    }
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < s.dim(); ++i) noise(i, j) = sigma * rng.normal();
    }
    const Matrix step = nsggd_batch_gradient(v.matrix(), batch) + noise;
    v = stiefel_project(v.matrix() - cfg.learning_rates[static_cast<std::size_t>(k)] * step);
    if (observer) observer(k + 1, v);
  }
  return v;
}

}  // namespace gdppca

#endif  // GDPPCA_COMPETITORS_HPP_
