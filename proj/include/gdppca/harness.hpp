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
#ifndef GDPPCA_HARNESS_HPP_
#define GDPPCA_HARNESS_HPP_

/*!@file
 * Seeded Monte Carlo experiment runner.
 *
 * A grid is expanded into tasks (model, n, d, epsilon index, repetition). Each
 * task samples one dataset and runs every requested method on it, so all
 * methods of a repetition see identical data. Every random stream is
 * RngStream(master_seed, stable_hash(key)) where key is
 *
 *   "model=<model>|n=<n>|d=<d>|eps=<epsilon index>|rep=<repetition>|<role>"
 *
 * and role is "data" for the sampler or the method name. Rows therefore
 * depend only on their own cell, so any sub-grid reproduces the same rows,
 * and the output order is the task order regardless of the thread count.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "gdppca/competitors.hpp"
#include "gdppca/errors.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"
#include "gdppca/mechanism.hpp"
#include "gdppca/rng.hpp"
#include "gdppca/samplers.hpp"
#include "gdppca/transforms.hpp"

namespace gdppca {

enum class Method {
  kGSph,
  kGWins,
  kAnalyzeGauss,
  kSgpca,
  kNsggd,
  kKendallSph,
  kKendallWins,
  kPairedSph,
  kPairedWins,
};

inline std::string method_name(Method m) {
  switch (m) {
    case Method::kGSph: return "g_sph";
    case Method::kGWins: return "g_wins";
    case Method::kAnalyzeGauss: return "AG";
    case Method::kSgpca: return "SGPCA";
    case Method::kNsggd: return "NSGGD";
    case Method::kKendallSph: return "kendall_sph";
    case Method::kKendallWins: return "kendall_wins";
    case Method::kPairedSph: return "paired_sph";
    case Method::kPairedWins: return "paired_wins";
  }
  return "unknown";
}

inline Method parse_method(const std::string& name) {
  for (Method m : {Method::kGSph, Method::kGWins, Method::kAnalyzeGauss, Method::kSgpca,
                   Method::kNsggd, Method::kKendallSph, Method::kKendallWins,
                   Method::kPairedSph, Method::kPairedWins}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + name + "'");
}

// Methods that consume the privacy budget.
inline bool is_private(Method m) {
  switch (m) {
    case Method::kGSph:
    case Method::kGWins:
    case Method::kAnalyzeGauss:
    case Method::kSgpca:
    case Method::kNsggd:
      return true;
    default:
      return false;
  }
}

struct ExperimentGrid {
  std::vector<ModelKind> models;
  std::vector<Index> sample_sizes;
  std::vector<Index> dims;
  std::vector<Method> methods;
  std::vector<double> epsilons;
  double delta = 1e-5;
  Index m = 2;
  std::size_t repetitions = 1;
  std::uint64_t master_seed = 0;
  // NSGGD iteration count: -1 selects min(n^2, 200 n); nsggd_full selects n^2.
  Index nsggd_iterations = -1;
  bool nsggd_full = false;
  bool record_runtime = false;
  std::size_t threads = 1;

  void validate() const {
    if (models.empty() || sample_sizes.empty() || dims.empty() || methods.empty() ||
        epsilons.empty()) {
      throw ConfigError("experiment grid lists must be nonempty");
    }
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (m < 1 || m > 2) throw ConfigError("target rank m must be 1 or 2 (two spikes)");
    for (Index d : dims) {
      if (d < 4) throw ConfigError("dimension must be >= 4, got " + std::to_string(d));
    }
    // The private competitors need two disjoint pairs; the estimators one pair.
    const bool any_private = std::any_of(methods.begin(), methods.end(), is_private);
    const Index min_n = any_private ? 4 : 2;
    for (Index n : sample_sizes) {
      if (n < min_n) {
        throw ConfigError("sample size must be >= " + std::to_string(min_n) + ", got " +
                          std::to_string(n));
      }
    }
    if (any_private) {
      for (double e : epsilons) PrivacyBudget(e, delta);
    }
  }
};

struct ResultRow {
  std::string model;
  std::string method;
  Index n = 0;
  Index d = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  double sin_theta = 0.0;
  double proj_frob = 0.0;
  double runtime_ms = 0.0;
  std::string notes;

  bool is_error() const { return notes.rfind("error=", 0) == 0; }
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string stream_key(const std::string& model, Index n, Index d,
                              std::size_t eps_index, std::size_t rep, const std::string& role) {
  std::ostringstream key;
  key << "model=" << model << "|n=" << n << "|d=" << d << "|eps=" << eps_index
      << "|rep=" << rep << "|" << role;
  return key.str();
}

namespace detail {

inline std::string sanitize_note(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return text;
}

struct MethodOutcome {
  OrthoFrame frame;
  std::string notes;
};

inline MethodOutcome run_method(Method method, const Dataset& data, const SpikedModel& base,
                                const ExperimentGrid& grid, double epsilon, RngStream& rng) {
  const Index d = data.dim();
  const Index m = grid.m;
  const double radius = std::sqrt(static_cast<double>(d));
  switch (method) {
    case Method::kGSph: {
      const PrivacyBudget b(epsilon, grid.delta);
      return {g_dppca(data, Transform::spherical(), m, b, rng), ""};
    }
    case Method::kGWins: {
      const PrivacyBudget b(epsilon, grid.delta);
      return {g_dppca(data, Transform::winsorized(radius), m, b, rng),
              "radius=" + format_double(radius)};
    }
    case Method::kAnalyzeGauss: {
      const PrivacyBudget b(epsilon, grid.delta);
      return {analyze_gauss(data, m, b, rng), ""};
    }
    case Method::kSgpca: {
      const PrivacyBudget b(epsilon, grid.delta);
      const SgpcaConfig cfg(
          sgpca_sensitivity(base.lambda_1(), base.lambda_d(), d, m, data.n()), m);
      return {sgpca(data, m, b, cfg, rng),
              "delta_sens=" + format_double(cfg.delta_sens) +
                  ";eigenvalues_known=1;dp=approximate(sensitivity holds w.h.p.)"};
    }
    case Method::kNsggd: {
      const PrivacyBudget b(epsilon, grid.delta);
      const Index iters = grid.nsggd_full ? data.n() * data.n() : grid.nsggd_iterations;
      const NsggdConfig cfg = nsggd_default_config(data.n(), b, iters);
      return {nsggd(data, m, b, cfg, rng),
              "T=" + std::to_string(cfg.iterations) + ";B=" + std::to_string(cfg.batch_size) +
                  ";eta=" + format_double(1.0 / (static_cast<double>(data.n()) * data.n()))};
    }
    case Method::kKendallSph:
      return {top_m(eigh(kendall_u(data, Transform::spherical())), m), "private=0"};
    case Method::kKendallWins:
      return {top_m(eigh(kendall_u(data, Transform::winsorized(radius))), m),
              "private=0;radius=" + format_double(radius)};
    case Method::kPairedSph:
      return {top_m(eigh(kendall_paired(data, Transform::spherical())), m), "private=0"};
    case Method::kPairedWins:
      return {top_m(eigh(kendall_paired(data, Transform::winsorized(radius))), m),
              "private=0;radius=" + format_double(radius)};
  }
  throw ConfigError("unknown method");
}

struct Task {
  std::size_t model_i, n_i, d_i, eps_i, rep;
};

// Runs fn(i) for i in [0, count) on `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// One ResultRow per (model, n, d, epsilon, repetition, method), in that
/// nesting order. Method failures become rows with NaN losses and an
/// "error=..." note.
inline std::vector<ResultRow> run_grid(const ExperimentGrid& grid) {
  grid.validate();
  std::vector<detail::Task> tasks;
  for (std::size_t mi = 0; mi < grid.models.size(); ++mi)
    for (std::size_t ni = 0; ni < grid.sample_sizes.size(); ++ni)
      for (std::size_t di = 0; di < grid.dims.size(); ++di)
        for (std::size_t ei = 0; ei < grid.epsilons.size(); ++ei)
          for (std::size_t r = 0; r < grid.repetitions; ++r) tasks.push_back({mi, ni, di, ei, r});

  const std::size_t per_task = grid.methods.size();
  std::vector<ResultRow> rows(tasks.size() * per_task);
  detail::parallel_for(tasks.size(), grid.threads, [&](std::size_t t) {
    const detail::Task& task = tasks[t];
    const ModelKind kind = grid.models[task.model_i];
    const std::string model = model_name(kind);
    const Index n = grid.sample_sizes[task.n_i];
    const Index d = grid.dims[task.d_i];
    const double epsilon = grid.epsilons[task.eps_i];
    const DataModel data_model = DataModel::paper(kind, d);
    const OrthoFrame truth(data_model.base.leading_frame().matrix().leftCols(grid.m));
    RngStream data_rng(grid.master_seed,
                       stable_hash(stream_key(model, n, d, task.eps_i, task.rep, "data")));
    const Dataset data = sample(data_model, n, data_rng);
    for (std::size_t k = 0; k < per_task; ++k) {
      const Method method = grid.methods[k];
      const std::string name = method_name(method);
      const std::uint64_t stream_id =
          stable_hash(stream_key(model, n, d, task.eps_i, task.rep, name));
      RngStream rng(grid.master_seed, stream_id);
      ResultRow& row = rows[t * per_task + k];
      row.model = model;
      row.method = name;
      row.n = n;
      row.d = d;
      row.epsilon = is_private(method) ? epsilon : std::numeric_limits<double>::infinity();
      row.delta = is_private(method) ? grid.delta : 0.0;
      row.repetition = task.rep;
      row.seed = stream_id;
      const auto start = std::chrono::steady_clock::now();
      try {
        const detail::MethodOutcome out =
            detail::run_method(method, data, data_model.base, grid, epsilon, rng);
        row.sin_theta = sin_theta(out.frame, truth);
        row.proj_frob = proj_frob(out.frame, truth);
        row.notes = detail::sanitize_note(out.notes);
      } catch (const std::exception& e) {
        row.sin_theta = std::numeric_limits<double>::quiet_NaN();
        row.proj_frob = std::numeric_limits<double>::quiet_NaN();
        row.notes = "error=" + detail::sanitize_note(e.what());
      }
      if (grid.record_runtime) {
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      }
    }
  });
  return rows;
}

/// The epsilon sweep is a grid whose epsilon list varies; stream keys carry the
/// epsilon index so cells at different budgets never share randomness.
inline std::vector<ResultRow> run_eps_sweep(const ExperimentGrid& grid) {
  return run_grid(grid);
}

/// Non-private comparison of kendall_u against kendall_paired on Gaussian data
/// with both transforms (winsorization radius sqrt(d)); proj_frob is the loss
/// of interest.
inline std::vector<ResultRow> run_paired_toy(Index dim, const std::vector<Index>& sizes,
                                             std::size_t reps, std::uint64_t seed,
                                             std::size_t threads = 1) {
  ExperimentGrid grid;
  grid.models = {ModelKind::kGaussian};
  grid.sample_sizes = sizes;
  grid.dims = {dim};
  grid.methods = {Method::kKendallSph, Method::kPairedSph, Method::kKendallWins,
                  Method::kPairedWins};
  grid.epsilons = {std::numeric_limits<double>::infinity()};
  grid.delta = 0.0;
  grid.repetitions = reps;
  grid.master_seed = seed;
  grid.threads = threads;
  return run_grid(grid);
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kResultHeader =
    "model,method,n,d,epsilon,delta,repetition,seed,sin_theta,proj_frob,runtime_ms,notes";

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.model << ',' << r.method << ',' << r.n << ',' << r.d << ','
        << format_double(r.epsilon) << ',' << format_double(r.delta) << ',' << r.repetition
        << ',' << r.seed << ',' << format_double(r.sin_theta) << ','
        << format_double(r.proj_frob) << ',' << format_double(r.runtime_ms) << ','
        << detail::sanitize_note(r.notes) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  out.push_back(cell);
  return out;
}

inline double parse_double_cell(const std::string& cell, std::size_t row, std::size_t col) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw ParseError("expected a number, got '" + cell + "'", row, col);
  }
  return v;
}

template <typename Int>
Int parse_int_cell(const std::string& cell, std::size_t row, std::size_t col) {
  Int v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw ParseError("expected an integer, got '" + cell + "'", row, col);
  }
  return v;
}

}  // namespace detail

/// Parses the harness schema. The header must match exactly.
inline std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty results file", 1, 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultHeader) {
    throw ParseError("header does not match the results schema '" + std::string(kResultHeader) +
                         "'",
                     1, 0);
  }
  std::vector<ResultRow> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 12) {
      throw ParseError("expected 12 fields, got " + std::to_string(cells.size()), row_no, 0);
    }
    ResultRow r;
    r.model = cells[0];
    r.method = cells[1];
    r.n = detail::parse_int_cell<Index>(cells[2], row_no, 3);
    r.d = detail::parse_int_cell<Index>(cells[3], row_no, 4);
    r.epsilon = detail::parse_double_cell(cells[4], row_no, 5);
    r.delta = detail::parse_double_cell(cells[5], row_no, 6);
    r.repetition = detail::parse_int_cell<std::size_t>(cells[6], row_no, 7);
    r.seed = detail::parse_int_cell<std::uint64_t>(cells[7], row_no, 8);
    r.sin_theta = detail::parse_double_cell(cells[8], row_no, 9);
    r.proj_frob = detail::parse_double_cell(cells[9], row_no, 10);
    r.runtime_ms = detail::parse_double_cell(cells[10], row_no, 11);
    r.notes = cells[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Summary

struct SummaryRow {
  std::string model;
  std::string method;
  Index n = 0;
  Index d = 0;
  double epsilon = 0.0;
  std::size_t count = 0;   // rows with finite losses
  std::size_t errors = 0;  // error rows
  double sin_theta_mean = 0.0;
  double sin_theta_se = 0.0;
  double proj_frob_mean = 0.0;
  double proj_frob_se = 0.0;
};

namespace detail {
inline std::pair<double, double> mean_and_se(const std::vector<double>& xs) {
  if (xs.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}
}  // namespace detail

/// Groups by (model, method, n, d, epsilon); error rows are counted but do not
/// enter the means. Output is sorted by the group key.
inline std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, Index, Index, double>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  std::map<Key, std::size_t> errors;
  for (const ResultRow& r : rows) {
    const Key key{r.model, r.method, r.n, r.d, r.epsilon};
    auto& g = groups[key];
    if (r.is_error() || !std::isfinite(r.sin_theta) || !std::isfinite(r.proj_frob)) {
      ++errors[key];
      continue;
    }
    g.first.push_back(r.sin_theta);
    g.second.push_back(r.proj_frob);
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, vals] : groups) {
    SummaryRow s;
    std::tie(s.model, s.method, s.n, s.d, s.epsilon) = key;
    s.count = vals.first.size();
    s.errors = errors.count(key) ? errors.at(key) : 0;
    std::tie(s.sin_theta_mean, s.sin_theta_se) = detail::mean_and_se(vals.first);
    std::tie(s.proj_frob_mean, s.proj_frob_se) = detail::mean_and_se(vals.second);
    out.push_back(s);
  }
  return out;
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "model,method,n,d,epsilon,count,errors,sin_theta_mean,sin_theta_se,proj_frob_mean,"
         "proj_frob_se\n";
  for (const SummaryRow& s : rows) {
    out << s.model << ',' << s.method << ',' << s.n << ',' << s.d << ','
        << format_double(s.epsilon) << ',' << s.count << ',' << s.errors << ','
        << format_double(s.sin_theta_mean) << ',' << format_double(s.sin_theta_se) << ','
        << format_double(s.proj_frob_mean) << ',' << format_double(s.proj_frob_se) << '\n';
  }
}

// Convenience lookup; throws if the group is absent.
inline const SummaryRow& find_summary(const std::vector<SummaryRow>& table,
                                      const std::string& model, const std::string& method,
                                      Index n, Index d, double epsilon) {
  for (const SummaryRow& s : table) {
    if (s.model == model && s.method == method && s.n == n && s.d == d &&
        (s.epsilon == epsilon || (std::isinf(s.epsilon) && std::isinf(epsilon)))) {
      return s;
    }
  }
  throw ConfigError("no summary group for " + model + "/" + method + " n=" +
                    std::to_string(n) + " d=" + std::to_string(d));
}

}  // namespace gdppca

#endif  // GDPPCA_HARNESS_HPP_
