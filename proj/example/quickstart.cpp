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

// Quickstart: sample a heavy-tailed spiked dataset, fit private principal
// directions with both transforms, and compare against the truth.

#include <cmath>
#include <iomanip>
#include <iostream>

#include "gdppca.hpp"

int main() {
  using namespace gdppca;

  const Index d = 10;
  const Index n = 2000;
  const DataModel model = DataModel::student_t1(paper_model(d));
  const OrthoFrame truth = model.base.leading_frame();

  RngStream data_rng(/*seed=*/42, /*stream_id=*/0);
  const Dataset data = sample(model, n, data_rng);
  const PrivacyBudget budget(/*epsilon=*/0.5, /*delta=*/1e-5);

  std::cout << std::fixed << std::setprecision(4);
  for (const Transform& g :
       {Transform::spherical(), Transform::winsorized(std::sqrt(static_cast<double>(d)))}) {
    RngStream rng = data_rng.substream(g.kind() == TransformKind::kSpherical ? 1 : 2);
    const OrthoFrame v = g_dppca(data, g, /*m=*/2, budget, rng);
    std::cout << "g_" << g.name() << ": noise sd " << sigma_for(g, n, budget)
              << ", sin_theta " << sin_theta(v, truth) << '\n';
  }

  RngStream ag_rng = data_rng.substream(3);
  std::cout << "Analyze Gauss: sin_theta "
            << sin_theta(analyze_gauss(data, 2, budget, ag_rng), truth) << '\n';
  return 0;
}
