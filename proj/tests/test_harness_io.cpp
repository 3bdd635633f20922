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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "gdppca/check_suite.hpp"
#include "gdppca/data_io.hpp"
#include "gdppca/errors.hpp"
#include "gdppca/harness.hpp"
#include "gdppca/svg_plot.hpp"

namespace gdppca {
namespace {

ExperimentGrid small_grid() {
  ExperimentGrid g;
  g.models = {ModelKind::kGaussian, ModelKind::kStudentT1};
  g.sample_sizes = {40, 60};
  g.dims = {5};
  g.methods = {Method::kGSph, Method::kGWins, Method::kAnalyzeGauss, Method::kSgpca,
               Method::kNsggd};
  g.epsilons = {0.5, 2.0};
  g.repetitions = 2;
  g.master_seed = 17;
  g.nsggd_iterations = 20;
  return g;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_results_csv(out, rows);
  return out.str();
}

TEST(Grid, Validation) {
  ExperimentGrid g = small_grid();
  EXPECT_NO_THROW(g.validate());
  g.repetitions = 0;
  EXPECT_THROW(g.validate(), ConfigError);
  g = small_grid();
  g.dims = {3};
  EXPECT_THROW(g.validate(), ConfigError);
  g = small_grid();
  g.sample_sizes = {3};
  EXPECT_THROW(g.validate(), ConfigError);
  g = small_grid();
  g.epsilons = {-1};
  EXPECT_THROW(g.validate(), ConfigError);
  g = small_grid();
  g.methods.clear();
  EXPECT_THROW(g.validate(), ConfigError);
}

TEST(Grid, RowsDeterministicAndInRange) {
  const ExperimentGrid g = small_grid();
  const auto rows = run_grid(g);
  ASSERT_EQ(rows.size(), 2u * 2 * 1 * 2 * 2 * 5);
  for (const auto& r : rows) {
    ASSERT_FALSE(r.is_error()) << r.notes;
    EXPECT_GE(r.sin_theta, 0.0);
    EXPECT_LE(r.sin_theta, 1.0);
    EXPECT_LE(r.proj_frob, 2.0 + 1e-12);
    EXPECT_EQ(r.runtime_ms, 0.0);
  }
  EXPECT_EQ(to_csv(rows), to_csv(run_grid(g)));
  ExperimentGrid threaded = g;
  threaded.threads = 4;
  EXPECT_EQ(to_csv(rows), to_csv(run_grid(threaded)));
}

TEST(Grid, SubGridReproducesRows) {
  const ExperimentGrid full = small_grid();
  ExperimentGrid sub = full;
  sub.models = {ModelKind::kStudentT1};
  sub.sample_sizes = {60};
  const auto all = run_grid(full);
  const auto part = run_grid(sub);
  for (const auto& r : part) {
    bool found = false;
    for (const auto& a : all) {
      if (a.model == r.model && a.method == r.method && a.n == r.n && a.epsilon == r.epsilon &&
          a.repetition == r.repetition) {
        EXPECT_EQ(a.sin_theta, r.sin_theta);
        EXPECT_EQ(a.seed, r.seed);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(Grid, EpsilonIndexEntersSeeds) {
  const auto rows = run_grid(small_grid());
  EXPECT_NE(rows[0].seed, rows[10].seed);  // same cell, different epsilon index
  EXPECT_EQ(rows[0].method, rows[10].method);
  EXPECT_NE(rows[0].epsilon, rows[10].epsilon);
}

TEST(Grid, NotesCarryMetadata) {
  const auto rows = run_grid(small_grid());
  EXPECT_NE(rows[3].notes.find("dp=approximate"), std::string::npos);
  EXPECT_NE(rows[4].notes.find("T=20"), std::string::npos);
}

TEST(PairedToy, TwoRowsCoincide) {
  const auto rows = run_paired_toy(5, {2}, 3, 9);
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    EXPECT_EQ(rows[i].proj_frob, rows[i + 1].proj_frob);
    EXPECT_EQ(rows[i + 2].proj_frob, rows[i + 3].proj_frob);
    EXPECT_TRUE(std::isinf(rows[i].epsilon));
    EXPECT_NE(rows[i].notes.find("private=0"), std::string::npos);
  }
}

TEST(Csv, RoundTrip) {
  const auto rows = run_grid(small_grid());
  std::istringstream in(to_csv(rows));
  const auto back = read_results_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(to_csv(back), to_csv(rows));
  EXPECT_EQ(to_csv({}), std::string(kResultHeader) + "\n");
}

TEST(Csv, RejectsWrongHeaderAndBadCells) {
  std::istringstream bad_header("model,method\n");
  EXPECT_THROW(read_results_csv(bad_header), ParseError);
  std::istringstream bad_cell(std::string(kResultHeader) +
                              "\ngaussian,g_sph,xx,5,0.5,1e-05,0,1,0.1,0.1,0,\n");
  try {
    read_results_csv(bad_cell);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos);
  }
}

TEST(Summary, Examples) {
  ResultRow a;
  a.model = "gaussian";
  a.method = "g_sph";
  a.n = 10;
  a.d = 5;
  a.sin_theta = 0.2;
  a.proj_frob = 0.2;
  ResultRow b = a;
  b.sin_theta = 0.4;
  ResultRow c = a;
  c.method = "AG";
  c.sin_theta = 0.9;
  auto one = summarize({a});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].sin_theta_mean, 0.2);
  EXPECT_EQ(one[0].sin_theta_se, 0.0);
  const auto two = summarize({a, b, c});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(find_summary(two, "gaussian", "g_sph", 10, 5, 0.0).sin_theta_mean, 0.3, 1e-15);
  EXPECT_EQ(find_summary(two, "gaussian", "AG", 10, 5, 0.0).sin_theta_mean, 0.9);
}

TEST(NumericCsv, HeaderDetectionAndErrors) {
  std::istringstream with_header("a,b\n1,2\n3,4.5\n");
  const NumericTable t = read_numeric_csv(with_header);
  EXPECT_EQ(t.header.size(), 2u);
  ASSERT_EQ(t.values.rows(), 2);
  EXPECT_EQ(t.values(1, 1), 4.5);
  std::istringstream no_header("1,2\n3,4\n");
  EXPECT_TRUE(read_numeric_csv(no_header).header.empty());
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_numeric_csv(ragged), ParseError);
  std::istringstream junk("1,2\n3,x\n");
  try {
    read_numeric_csv(junk);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2, column 2"), std::string::npos);
  }
}

TEST(Svg, PanelsAndDeterminism) {
  ExperimentGrid g = small_grid();
  g.dims = {4, 5, 6};
  g.models = {ModelKind::kGaussian};
  g.methods = {Method::kGSph, Method::kAnalyzeGauss};
  g.epsilons = {0.5};
  const auto rows = run_grid(g);
  EXPECT_EQ(panel_count(rows), 3u);
  const std::string svg = render_svg(rows);
  EXPECT_EQ(svg, render_svg(rows));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("d = 6"), std::string::npos);
  EXPECT_NE(svg.find("mean sin(theta)"), std::string::npos);
  EXPECT_THROW(render_svg({}), ConfigError);
}

TEST(Svg, EpsilonAxisForSweeps) {
  ExperimentGrid g = small_grid();
  g.sample_sizes = {60};
  g.methods = {Method::kGSph};
  const std::string svg = render_svg(run_grid(g));
  EXPECT_NE(svg.find(">epsilon<"), std::string::npos);
}

TEST(CheckSuite, DeterministicChecksPassAndBugIsCaught) {
  CheckConfig cfg;
  cfg.monte_carlo = false;
  cfg.swaps = 50;
  cfg.corruption_trials = 24;
  for (const auto& r : run_check_suite(cfg)) {
    // The Analyze Gauss bound is violated by swaps that change the max-norm
    // normalizer (see AnalyzeGauss.MaxNormSwapExceedsSixOverN); every other
    // deterministic check is a theorem.
    if (r.name.rfind("analyze_gauss", 0) == 0) {
      EXPECT_FALSE(r.passed) << r.name;
    } else {
      EXPECT_TRUE(r.passed) << r.name;
    }
  }
  cfg.inject_sensitivity_bug = true;
  cfg.swaps = 200;
  bool any_failed = false;
  for (const auto& r : run_check_suite(cfg)) {
    if (r.name.rfind("kendall_sensitivity", 0) == 0) any_failed = any_failed || !r.passed;
  }
  EXPECT_TRUE(any_failed);
}

}  // namespace
}  // namespace gdppca
