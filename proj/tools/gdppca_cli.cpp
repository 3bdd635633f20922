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

// gdppca command-line driver: simulate | fit | check | plot.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gdppca.hpp"

namespace {

using namespace gdppca;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kCheckFailed = 3 };

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency
  std::string out;
};

struct SimulateOptions {
  std::string profile = "desk";
  std::optional<int> figure;
  std::vector<std::string> models;
  std::vector<Index> ns;
  std::vector<Index> ds;
  std::vector<double> eps;
  std::vector<std::string> methods;
  std::optional<std::size_t> reps;
  std::optional<Index> nsggd_iters;
  double delta = 1e-5;
  bool timing = false;
  std::string summary;
};

struct FitOptions {
  std::string input;
  std::string g = "sph";
  std::optional<double> radius;
  Index m = 2;
  double eps = 2.0;
  double delta = 1e-4;
  std::string emit_scores;
};

struct CheckOptions {
  std::size_t samples = 200000;
  bool no_monte_carlo = false;
  bool inject_bug = false;
};

struct PlotOptionsCli {
  std::string input;
  std::string metric = "auto";
  std::string title;
};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Opens the output stream up front so an unwritable path fails before any
// computation is spent.
std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file '" + path + "' for writing");
  return out;
}

ExperimentGrid figure_grid(int figure, bool full_scale) {
  ExperimentGrid grid;
  const std::vector<Method> competitors = {Method::kGSph, Method::kGWins, Method::kAnalyzeGauss,
                                           Method::kSgpca, Method::kNsggd};
  const std::vector<Index> desk_ns = {250, 500, 750, 1000};
  const std::vector<Index> full_ns = {250, 500, 750, 1000, 1500, 2000};
  grid.sample_sizes = full_scale ? full_ns : desk_ns;
  grid.repetitions = full_scale ? 100 : 30;
  grid.nsggd_full = full_scale;
  grid.epsilons = {0.5};
  grid.dims = {5, 10, 25};
  grid.methods = competitors;
  switch (figure) {
    case 1:
      grid.models = {ModelKind::kGaussian};
      grid.dims = {25};
      grid.methods = {Method::kKendallSph, Method::kPairedSph, Method::kKendallWins,
                      Method::kPairedWins};
      grid.epsilons = {std::numeric_limits<double>::infinity()};
      grid.delta = 0.0;
      grid.repetitions = full_scale ? 1000 : 200;
      break;
    case 2: grid.models = {ModelKind::kGaussian}; break;
    case 3: grid.models = {ModelKind::kStudentT1}; break;
    case 4: grid.models = {ModelKind::kContaminatedGaussian}; break;
    case 5:
      grid.models = {ModelKind::kGaussian, ModelKind::kStudentT1,
                     ModelKind::kContaminatedGaussian};
      grid.sample_sizes = {2000};
      grid.dims = {10};
      grid.epsilons = {0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
      break;
    default:
      throw ConfigError("--figure must be in 1..5");
  }
  return grid;
}

void print_summary(std::ostream& os, const std::vector<ResultRow>& rows) {
  const auto table = summarize(rows);
  char line[256];
  std::snprintf(line, sizeof(line), "%-13s %-12s %6s %4s %7s %5s %5s %12s %12s\n", "model",
                "method", "n", "d", "eps", "reps", "errs", "sin_theta", "proj_frob");
  os << line;
  for (const SummaryRow& s : table) {
    std::snprintf(line, sizeof(line), "%-13s %-12s %6lld %4lld %7g %5zu %5zu %12.4f %12.4f\n",
                  s.model.c_str(), s.method.c_str(), static_cast<long long>(s.n),
                  static_cast<long long>(s.d), s.epsilon, s.count, s.errors, s.sin_theta_mean,
                  s.proj_frob_mean);
    os << line;
  }
}

int cmd_simulate(const GlobalOptions& global, const SimulateOptions& opt) {
  if (opt.profile != "desk" && opt.profile != "paper") {
    throw ConfigError("--profile must be desk or paper");
  }
  const bool full_scale = opt.profile == "paper";
  ExperimentGrid grid = figure_grid(opt.figure.value_or(2), full_scale);
  if (!opt.figure) grid.models = {ModelKind::kGaussian};
  if (!opt.models.empty()) {
    grid.models.clear();
    for (const auto& m : opt.models) grid.models.push_back(parse_model(m));
  }
  if (!opt.ns.empty()) grid.sample_sizes = opt.ns;
  if (!opt.ds.empty()) grid.dims = opt.ds;
  if (!opt.eps.empty()) grid.epsilons = opt.eps;
  if (!opt.methods.empty()) {
    grid.methods.clear();
    for (const auto& m : opt.methods) grid.methods.push_back(parse_method(m));
  }
  if (opt.reps) grid.repetitions = *opt.reps;
  if (opt.nsggd_iters) {
    if (*opt.nsggd_iters < 0) throw ConfigError("--nsggd-iters must be >= 0");
    grid.nsggd_iterations = *opt.nsggd_iters;
    grid.nsggd_full = false;
  }
  if (opt.figure.value_or(0) != 1) grid.delta = opt.delta;
  grid.master_seed = global.seed;
  grid.record_runtime = opt.timing;
  grid.threads = resolve_threads(global.threads);
  grid.validate();

  const std::string path = global.out.empty() ? "results.csv" : global.out;
  std::ofstream out = open_output(path);
  std::optional<std::ofstream> summary_out;
  if (!opt.summary.empty()) summary_out = open_output(opt.summary);

  const std::vector<ResultRow> rows = run_grid(grid);
  write_results_csv(out, rows);
  out.close();
  if (!out) throw Error("failed writing '" + path + "'");
  if (summary_out) write_summary_csv(*summary_out, summarize(rows));
  print_summary(std::cout, rows);
  std::cout << "wrote " << rows.size() << " rows to " << path << '\n';
  return kOk;
}

int cmd_fit(const GlobalOptions& global, const FitOptions& opt) {
  if (opt.g != "sph" && opt.g != "wins") throw ConfigError("--g must be sph or wins");
  const PrivacyBudget budget(opt.eps, opt.delta);
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + opt.input + "'");
  const NumericTable table = read_numeric_csv(in);
  const Dataset data(table.values);
  if (data.n() < 2) {
    throw InsufficientDataError("fit needs at least 2 data rows, got " +
                                std::to_string(data.n()));
  }
  if (opt.m < 1 || opt.m > data.dim()) {
    throw ConfigError("--m must be in [1, " + std::to_string(data.dim()) + "]");
  }
  const double radius = opt.radius.value_or(std::sqrt(static_cast<double>(data.dim())));
  const Transform g = opt.g == "sph" ? Transform::spherical() : Transform::winsorized(radius);

  const std::string path = global.out.empty() ? "directions.csv" : global.out;
  std::ofstream out = open_output(path);
  std::optional<std::ofstream> scores_out;
  if (!opt.emit_scores.empty()) scores_out = open_output(opt.emit_scores);

  RngStream rng(global.seed, stable_hash("fit"));
  const OrthoFrame frame = g_dppca(data, g, opt.m, budget, rng);
  std::vector<std::string> header;
  for (Index k = 0; k < opt.m; ++k) header.push_back("pc" + std::to_string(k + 1));
  write_matrix_csv(out, frame.matrix(), header);

  if (scores_out) {
    *scores_out << "# WARNING: these projected scores are NOT differentially private; only the "
                   "directions are. Do not release them.\n";
    write_matrix_csv(*scores_out, data.rows() * frame.matrix(), header);
  }
  std::cout << "g=" << g.name() << " n=" << data.n() << " d=" << data.dim() << " m=" << opt.m
            << " eps=" << format_double(opt.eps) << " delta=" << format_double(opt.delta)
            << " sigma=" << format_double(sigma_for(g, data.n(), budget)) << '\n'
            << "wrote directions to " << path << '\n';
  if (scores_out) {
    std::cout << "WARNING: scores in " << opt.emit_scores
              << " are NOT differentially private\n";
  }
  return kOk;
}

int cmd_check(const GlobalOptions& global, const CheckOptions& opt) {
  CheckConfig cfg;
  cfg.seed = global.seed;
  cfg.mc_samples = opt.samples;
  cfg.monte_carlo = !opt.no_monte_carlo;
  cfg.inject_sensitivity_bug = opt.inject_bug;
  if (cfg.mc_samples < 100) throw ConfigError("--samples must be >= 100");

  std::optional<std::ofstream> report;
  if (!global.out.empty()) report = open_output(global.out);

  const auto results = run_check_suite(cfg);
  bool deterministic_ok = true;
  bool all_ok = true;
  for (const CheckResult& r : results) {
    std::ostringstream line;
    line << (r.passed ? "PASS " : "FAIL ") << (r.deterministic ? "[exact] " : "[mc]    ")
         << r.name << "  measured=" << format_double(r.measured)
         << " threshold=" << format_double(r.threshold) << "  (" << r.detail << ")";
    std::cout << line.str() << '\n';
    if (report) *report << line.str() << '\n';
    all_ok = all_ok && r.passed;
    if (r.deterministic) deterministic_ok = deterministic_ok && r.passed;
  }
  if (!all_ok && deterministic_ok) {
    std::cout << "note: only Monte Carlo checks failed; these carry a nominal false-alarm rate\n";
  }
  return deterministic_ok ? kOk : kCheckFailed;
}

int cmd_plot(const GlobalOptions& global, const PlotOptionsCli& opt) {
  PlotOptions po;
  if (opt.metric == "sin_theta") po.metric = PlotMetric::kSinTheta;
  else if (opt.metric == "proj_frob") po.metric = PlotMetric::kProjFrob;
  else if (opt.metric != "auto") throw ConfigError("--metric must be auto, sin_theta or proj_frob");
  po.title = opt.title;

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + opt.input + "'");
  const std::vector<ResultRow> rows = read_results_csv(in);
  if (rows.empty()) throw ParseError("results file has a header but no data rows", 1, 0);
  // Render fully before touching the output so failures leave no file behind.
  const std::string svg = render_svg(rows, po);
  const std::string path = global.out.empty() ? "plot.svg" : global.out;
  std::ofstream out = open_output(path);
  out << svg;
  out.close();
  if (!out) throw Error("failed writing '" + path + "'");
  std::cout << "wrote " << panel_count(rows) << " panel(s) to " << path << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private robust PCA via generalized Kendall's tau"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--out", global.out, "Output path");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment grid");
  simulate->add_option("--profile", sim.profile, "desk (reduced) or paper (full scale)")
      ->check(CLI::IsMember({"desk", "paper"}))
      ->capture_default_str();
  simulate->add_option("--figure", sim.figure, "Preset grid 1..5")->check(CLI::Range(1, 5));
  simulate->add_option("--models", sim.models, "gaussian, t1, contaminated")
      ->check(CLI::IsMember({"gaussian", "t1", "contaminated"}))
      ->delimiter(',');
  simulate->add_option("--ns", sim.ns, "Sample sizes")->delimiter(',');
  simulate->add_option("--ds", sim.ds, "Dimensions")->delimiter(',');
  simulate->add_option("--eps", sim.eps, "Privacy budgets epsilon")->delimiter(',');
  simulate->add_option("--delta", sim.delta, "Privacy parameter delta")->capture_default_str();
  simulate->add_option("--methods", sim.methods, "Methods to run")->delimiter(',');
  simulate->add_option("--reps", sim.reps, "Repetitions per cell");
  simulate->add_option("--nsggd-iters", sim.nsggd_iters, "NSGGD iteration count T");
  simulate->add_flag("--timing", sim.timing, "Record wall-clock runtime_ms (not reproducible)");
  simulate->add_option("--summary", sim.summary, "Also write a summary CSV here");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit private principal directions to a CSV");
  fit_cmd->add_option("input", fit.input, "Numeric CSV, one row per record")->required();
  fit_cmd->add_option("--g", fit.g, "Transform: sph or wins")
      ->check(CLI::IsMember({"sph", "wins"}))
      ->capture_default_str();
  fit_cmd->add_option("--radius", fit.radius, "Winsorization radius (default sqrt(d))");
  fit_cmd->add_option("--m", fit.m, "Number of directions")->capture_default_str();
  fit_cmd->add_option("--eps", fit.eps, "Privacy budget epsilon")->capture_default_str();
  fit_cmd->add_option("--delta", fit.delta, "Privacy parameter delta")->capture_default_str();
  fit_cmd->add_option("--emit-scores", fit.emit_scores,
                      "Write projected scores (NOT differentially private) here");

  CheckOptions chk;
  auto* check = app.add_subcommand("check", "Run the theory self-check suite");
  check->add_option("--samples", chk.samples, "Monte Carlo draws per check")
      ->capture_default_str();
  check->add_flag("--no-monte-carlo", chk.no_monte_carlo, "Deterministic checks only");
  check->add_flag("--inject-bug", chk.inject_bug)->group("");

  PlotOptionsCli plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render a results CSV as SVG");
  plot_cmd->add_option("input", plot.input, "Results CSV")->required();
  plot_cmd->add_option("--metric", plot.metric, "auto, sin_theta or proj_frob")
      ->check(CLI::IsMember({"auto", "sin_theta", "proj_frob"}))
      ->capture_default_str();
  plot_cmd->add_option("--title", plot.title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(global, sim);
    if (*fit_cmd) return cmd_fit(global, fit);
    if (*check) return cmd_check(global, chk);
    if (*plot_cmd) return cmd_plot(global, plot);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
