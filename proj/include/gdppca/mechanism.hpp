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
#ifndef GDPPCA_MECHANISM_HPP_
#define GDPPCA_MECHANISM_HPP_

#include <cmath>
#include <string>

#include "gdppca/errors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/rng.hpp"
#include "gdppca/transforms.hpp"

namespace gdppca {

class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw ConfigError("epsilon must be positive and finite, got " + std::to_string(epsilon));
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
  }

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // sqrt(2 ln(1.25 / delta)), the Gaussian-mechanism calibration factor.
  double gaussian_factor() const { return std::sqrt(2.0 * std::log(1.25 / delta_)); }

 private:
  double epsilon_;
  double delta_;
};

/// Noise scale 4 ||g||_inf^2 sqrt(2 ln(1.25/delta)) / (n eps); the Gaussian
/// mechanism calibrated to the Frobenius sensitivity of kendall_u.
inline double sigma_for(const Transform& g, Index n, const PrivacyBudget& b) {
  return sensitivity_bound(g, n) * b.gaussian_factor() / b.epsilon();
}

/// a + vecd_inv(xi), xi ~ N(0, sigma^2 I_q), q = d(d+1)/2. Draws are consumed
/// in vecd coordinate order, so off-diagonal noise has variance sigma^2 / 2.
inline SymMat gauss_mech(const SymMat& a, double sigma, RngStream& rng) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("gauss_mech: sigma must be positive and finite");
  }
  Vector xi(vecd_length(a.dim()));
  for (Index k = 0; k < xi.size(); ++k) xi(k) = sigma * rng.normal();
  return a + vecd_inv(xi, a.dim());
}

/// g-DPPCA: top-m eigenvectors of the privatized Kendall's tau matrix.
///
/// The dataset is read only through kendall_u; everything after the
/// mechanism is post-processing.
inline OrthoFrame g_dppca(const Dataset& s, const Transform& g, Index m,
                          const PrivacyBudget& b, RngStream& rng) {
  if (m < 1 || m > s.dim()) {
    throw DimensionError("g_dppca: m=" + std::to_string(m) + " outside [1, d]");
  }
  const SymMat k_hat = kendall_u(s, g);
  const SymMat noisy = gauss_mech(k_hat, sigma_for(g, s.n(), b), rng);
  return top_m(eigh(noisy), m);
}

}  // namespace gdppca

#endif  // GDPPCA_MECHANISM_HPP_
