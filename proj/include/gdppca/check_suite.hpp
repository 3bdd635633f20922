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
#ifndef GDPPCA_CHECK_SUITE_HPP_
#define GDPPCA_CHECK_SUITE_HPP_

/*!@file
 * Self-check suite behind `gdppca check`.
 *
 * Deterministic checks are inequalities that hold for every input (sensitivity
 * bounds, the corruption deviation bound); any failure is a bug. Monte Carlo
 * checks compare independent estimators within three combined standard
 * errors, so their tolerance shrinks like 1/sqrt(samples).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gdppca/competitors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/rng.hpp"
#include "gdppca/samplers.hpp"
#include "gdppca/theory.hpp"
#include "gdppca/transforms.hpp"

namespace gdppca {

struct CheckConfig {
  std::uint64_t seed = 2024;
  std::size_t swaps = 200;              // neighbor swaps per configuration
  std::size_t corruption_trials = 150;  // total, split across configurations
  std::size_t mc_samples = 200000;
  bool monte_carlo = true;
  // Negative control: replaces the 4 in the kendall_u sensitivity bound by 1.
  bool inject_sensitivity_bug = false;
};

struct CheckResult {
  std::string name;
  bool deterministic = true;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

namespace detail {

// A replacement row for neighbor-swap searches: ordinary, far away, tiny,
// or a copy of another row.
inline Vector swap_candidate(const Dataset& s, RngStream& rng) {
  const Index d = s.dim();
  Vector out(d);
  for (Index j = 0; j < d; ++j) out(j) = rng.normal();
  switch (rng.uniform_index(4)) {
    case 0: break;
    case 1: out *= 1e4; break;
    case 2: out *= 1e-8; break;
    default: out = s.row(static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(s.n())))).transpose();
  }
  return out;
}

// Row to overwrite in swap t: every fourth swap targets the row farthest from
// the sample mean (the one that sets any max-norm normalizer), the rest are
// uniform.
inline Index swap_row(const Dataset& s, std::size_t t, RngStream& rng) {
  if (t % 4 == 0) {
    const Vector mean = s.rows().colwise().mean();
    Index far = 0;
    (s.rows().rowwise() - mean.transpose()).rowwise().squaredNorm().maxCoeff(&far);
    return far;
  }
  return static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(s.n())));
}

inline Dataset neighbor(const Dataset& s, Index row, const Vector& replacement) {
  Matrix x = s.rows();
  x.row(row) = replacement.transpose();
  return Dataset(std::move(x));
}

inline Dataset check_dataset(Index n, Index d, RngStream& rng) {
  if (d >= 4) return sample(DataModel::student_t1(paper_model(d)), n, rng);
  Matrix x(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) x(i, j) = (j + 1.0) * rng.normal();
  return Dataset(std::move(x));
}

}  // namespace detail

/// Largest ||K(S) - K(S')||_F over random one-row swaps.
inline double max_kendall_swap_change(const Dataset& s, const Transform& g, std::size_t swaps,
                                      RngStream& rng) {
  const SymMat base = kendall_u(s, g);
  double worst = 0.0;
  for (std::size_t t = 0; t < swaps; ++t) {
    const Index row = detail::swap_row(s, t, rng);
    const Dataset other = detail::neighbor(s, row, detail::swap_candidate(s, rng));
    worst = std::max(worst, (kendall_u(other, g) - base).frobenius_norm());
  }
  return worst;
}

/// Largest change of the Analyze Gauss normalized covariance over random swaps.
inline double max_analyze_gauss_swap_change(const Dataset& s, std::size_t swaps, RngStream& rng) {
  const SymMat base = analyze_gauss_covariance(s);
  double worst = 0.0;
  for (std::size_t t = 0; t < swaps; ++t) {
    const Index row = detail::swap_row(s, t, rng);
    const Dataset other = detail::neighbor(s, row, detail::swap_candidate(s, rng));
    worst = std::max(worst, (analyze_gauss_covariance(other) - base).frobenius_norm());
  }
  return worst;
}

inline std::vector<CheckResult> run_check_suite(const CheckConfig& cfg) {
  constexpr double kSlack = 1e-10;
  std::vector<CheckResult> out;
  const RngStream root(cfg.seed, stable_hash("check-suite"));

  // Sensitivity of kendall_u.
  std::uint64_t stream = 0;
  for (const auto& [n, d] : {std::pair<Index, Index>{20, 3}, {50, 5}}) {
    for (const Transform& g :
         {Transform::spherical(), Transform::winsorized(std::sqrt(static_cast<double>(d)))}) {
      RngStream rng = root.substream(++stream);
      const Dataset s = detail::check_dataset(n, d, rng);
      const double worst = max_kendall_swap_change(s, g, cfg.swaps, rng);
      double bound = sensitivity_bound(g, n);
      if (cfg.inject_sensitivity_bug) bound /= 4.0;
      std::ostringstream name;
      name << "kendall_sensitivity g=" << g.name() << " n=" << n << " d=" << d;
      out.push_back({name.str(), true, worst <= bound + kSlack, worst, bound,
                     std::to_string(cfg.swaps) + " swaps"});
    }
  }

  // Corruption deviation bound: 3 fractions x 2 transforms.
  {
    const double alphas[] = {0.05, 0.1, 0.2};
    const std::size_t per = std::max<std::size_t>(1, (cfg.corruption_trials + 5) / 6);
    std::size_t total = 0;
    std::size_t held = 0;
    double worst_ratio = 0.0;
    for (double alpha : alphas) {
      for (const Transform& g : {Transform::spherical(), Transform::winsorized(std::sqrt(5.0))}) {
        RngStream rng = root.substream(++stream);
        const Dataset s = sample(DataModel::gaussian(paper_model(5)), 60, rng);
        const CorruptionReport rep = corruption_deviation_report(s, g, 2, alpha, per, rng);
        total += rep.trials.size();
        for (const auto& t : rep.trials) held += t.holds ? 1 : 0;
        worst_ratio = std::max(worst_ratio, rep.max_ratio);
      }
    }
    out.push_back({"corruption_deviation_bound", true, held == total, worst_ratio, 1.0,
                   std::to_string(held) + "/" + std::to_string(total) +
                       " trials hold; measured = max sin_theta / bound"});
  }

  // Analyze Gauss normalized covariance sensitivity <= 6/n.
  {
    RngStream rng = root.substream(++stream);
    const Index n = 50;
    const Dataset s = detail::check_dataset(n, 3, rng);
    const double worst = max_analyze_gauss_swap_change(s, cfg.swaps, rng);
    const double bound = 6.0 / static_cast<double>(n);
    out.push_back({"analyze_gauss_sensitivity n=50 d=3", true, worst <= bound + kSlack, worst,
                   bound, std::to_string(cfg.swaps) + " swaps"});
  }

  if (!cfg.monte_carlo) return out;

  // phi_sph shares sum to one.
  const Vector eig = paper_model(5).eigenvalues();
  {
    RngStream rng = root.substream(++stream);
    const auto est = phi_sph_all(eig, cfg.mc_samples, rng);
    double total = 0.0;
    for (const auto& e : est) total += e.value;
    out.push_back({"phi_sph_sum_to_one", false, std::abs(total - 1.0) <= 1e-12,
                   std::abs(total - 1.0), 1e-12, "d=5"});
  }

  // phi_sph vs kendall_u spectrum on Gaussian data (n = 2000, d = 5).
  {
    RngStream rng = root.substream(++stream);
    const auto est = phi_sph_all(eig, cfg.mc_samples, rng);
    const Dataset s = sample(DataModel::gaussian(paper_model(5)), 2000, rng);
    const Transform g = Transform::spherical();
    const EigenPairs e = eigh(kendall_u(s, g));
    for (Index ell : {Index{1}, Index{2}, Index{5}}) {
      const double se_k = kendall_eigenvalue_se(s, g, e.vectors.column(ell - 1));
      const auto& mc = est[static_cast<std::size_t>(ell - 1)];
      const double diff = std::abs(e.values(ell - 1) - mc.value);
      const double tol = 3.0 * std::hypot(se_k, mc.std_error);
      out.push_back({"phi_sph_vs_kendall ell=" + std::to_string(ell), false, diff <= tol, diff,
                     tol, "3 combined standard errors"});
    }
  }

  // Winsorized sandwich at d = 5.
  for (double r : {0.5, std::sqrt(5.0), 5.0 * std::sqrt(5.0)}) {
    RngStream rng = root.substream(++stream);
    const WinsSandwich w = wins_sandwich(eig, 1, r, ModelKind::kGaussian, cfg.mc_samples, rng);
    std::ostringstream name;
    name << "phi_wins_sandwich r=" << r;
    out.push_back({name.str(), false, w.lower_holds() && w.upper_holds(), w.phi_wins.value,
                   w.upper(), "lower=" + std::to_string(w.lower())});
  }
  return out;
}

}  // namespace gdppca

#endif  // GDPPCA_CHECK_SUITE_HPP_
