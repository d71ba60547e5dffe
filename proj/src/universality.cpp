// Copyright 2026 The Wigner Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wigner/universality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigner/errors.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

double normalized_lp_norm(const ComplexVector& v, double p) {
  if (!(p > 2.0)) throw InvalidArgument("deloc: need p > 2");
  if (v.size() == 0) throw InvalidArgument("deloc: empty vector");
  const double n = static_cast<double>(v.size());
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff() * std::sqrt(n);
  std::vector<double> powers(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) powers[i] = std::pow(std::abs(v(i)), p);
  return std::pow(pairwise_sum(powers), 1.0 / p) * std::pow(n, 0.5 - 1.0 / p);
}

DelocResult deloc_statistic(const EnsembleSpec& spec, const DelocQuery& query,
                            const RunOptions& options) {
  spec.validate();
  if (!(std::abs(query.E) < 2.0)) throw InvalidArgument("deloc: need |E| < 2");
  if (!(query.K > 0.0)) throw InvalidArgument("deloc: K must be positive");
  if (!(query.p > 2.0)) throw InvalidArgument("deloc: need p > 2");
  if (query.trials == 0) throw InvalidArgument("deloc: need at least one trial");

  const double n = static_cast<double>(spec.N);
  const double half = query.K / n;
  auto per_trial = run_trials(query.trials, options.jobs, [&](std::size_t trial) {
    const auto sample = eigen_decompose(sample_matrix(spec, trial), true);
    std::vector<double> out;
    for (std::size_t a = 0; a < sample.eigenvalues.size(); ++a) {
      if (std::abs(sample.eigenvalues[a] - query.E) > half) continue;
      ComplexVector v = sample.eigenvectors->col(static_cast<Eigen::Index>(a));
      if (query.randomize_phases) {
        DrawStream stream(spec.seed, StreamDomain::phase, trial, a);
        v *= std::polar(1.0, 2.0 * std::numbers::pi * stream.next_uniform());
      }
      out.push_back(normalized_lp_norm(v, query.p));
    }
    return out;
  });

  DelocResult result;
  result.query = query;
  result.N = spec.N;
  result.seed = spec.seed;
  for (const auto& t : per_trial) {
    if (!t) {
      ++result.failed_trials;
    } else if (t->empty()) {
      ++result.skipped_trials;
    } else {
      ++result.valid_trials;
      result.values.insert(result.values.end(), t->begin(), t->end());
    }
  }
  if (result.values.empty()) throw EmptySample("deloc: no eigenvalue in any window");
  result.max = *std::max_element(result.values.begin(), result.values.end());
  result.mean = mean_with_stderr(result.values);
  result.q50 = quantile(result.values, 0.5);
  result.q90 = quantile(result.values, 0.9);
  result.q99 = quantile(result.values, 0.99);
  result.q99_interval = quantile_interval(result.values, 0.99);
  return result;
}

StatReport DelocResult::to_report() const {
  StatReport r;
  r.statistic = "deloc";
  r.requested_trials = query.trials;
  r.failed_trials = failed_trials;
  const double count = static_cast<double>(values.size());
  auto add = [&](const std::string& name, double estimate, double se) {
    ReportRow row;
    row.statistic = name;
    row.E = query.E;
    row.scale = "K";
    row.N = N;
    row.K_or_eta = query.K;
    row.estimate = estimate;
    row.stderr_ = se;
    row.trials = valid_trials;
    row.seed = seed;
    row.extras = {{"p", query.p}, {"vectors", count}, {"skipped_trials", static_cast<double>(skipped_trials)}};
    r.rows.push_back(std::move(row));
  };
  add("deloc_mean", mean.mean, mean.stderr_);
  add("deloc_q50", q50, std::nan(""));
  add("deloc_q90", q90, std::nan(""));
  add("deloc_q99", q99, q99_interval.width() / (2.0 * kZ95));
  add("deloc_max", max, std::nan(""));
  r.summary["p"] = std::isinf(query.p) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(query.p);
  r.summary["q99_interval"] = {q99_interval.lo, q99_interval.hi};
  r.summary["skipped_trials"] = skipped_trials;
  return r;
}

double sine_kernel(double x) {
  const double t = std::numbers::pi * x;
  if (std::abs(x) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  // exact zeros at nonzero integers; sin(pi k) is only ~1e-16 in floating point
  if (x == std::round(x)) return 0.0;
  return std::sin(t) / t;
}

CorrelationResult two_point_correlation(const EnsembleSpec& spec, const CorrelationQuery& query,
                                        const RunOptions& options) {
  spec.validate();
  if (!(std::abs(query.E) < 2.0)) throw InvalidArgument("corr: need |E| < 2");
  if (!(query.W > 0.0)) throw InvalidArgument("corr: W must be positive");
  if (!(query.bin_width > 0.0)) throw InvalidArgument("corr: bin width must be positive");
  if (query.trials == 0) throw InvalidArgument("corr: need at least one trial");
  if (query.s_grid.empty()) throw InvalidArgument("corr: empty s grid");
  for (double s : query.s_grid) {
    if (!(s > 0.0) || s > query.W) throw InvalidArgument("corr: s values must lie in (0, W]");
  }
  const double n = static_cast<double>(spec.N);
  const double E = query.reflect ? -query.E : query.E;
  const double rho = semicircle_density(E);
  const double half = query.W / (n * rho);
  if (!(std::abs(E) + half < 2.0)) {
    throw InvalidArgument("corr: window E +- W/(N rho) leaves the bulk (-2, 2); reduce W");
  }
  const double reach = *std::max_element(query.s_grid.begin(), query.s_grid.end()) +
                       query.bin_width / 2.0;
  const std::size_t bins = query.s_grid.size();

  auto per_trial = run_trials(query.trials, options.jobs, [&](std::size_t trial) {
    const auto sample = eigen_decompose(sample_matrix(spec, trial), false);
    std::vector<double> x;
    for (double mu : sample.eigenvalues) {
      const double pos = n * rho * ((query.reflect ? -mu : mu) - E);
      if (std::abs(pos) <= query.W) x.push_back(pos);
    }
    std::sort(x.begin(), x.end());
    std::vector<std::uint64_t> counts(bins, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        const double s = x[j] - x[i];
        if (s > reach) break;
        if (!(s > 0.0)) continue;
        for (std::size_t b = 0; b < bins; ++b) {
          const double lo = query.s_grid[b] - query.bin_width / 2.0;
          if (s >= lo && s < lo + query.bin_width) ++counts[b];
        }
      }
    }
    return counts;
  });

  CorrelationResult result;
  result.query = query;
  result.N = spec.N;
  result.seed = spec.seed;
  result.rho = rho;
  std::vector<std::vector<double>> per_bin(bins);
  for (const auto& t : per_trial) {
    if (!t) {
      ++result.failed_trials;
      continue;
    }
    ++result.valid_trials;
    for (std::size_t b = 0; b < bins; ++b) {
      const double s = query.s_grid[b];
      per_bin[b].push_back(static_cast<double>((*t)[b]) /
                           (query.bin_width * (2.0 * query.W - s)));
    }
  }
  if (result.valid_trials == 0) throw EmptySample("corr: every trial failed");
  for (std::size_t b = 0; b < bins; ++b) {
    CorrelationPoint p;
    p.s = query.s_grid[b];
    p.estimate = mean_with_stderr(per_bin[b]);
    const double S = sine_kernel(p.s);
    p.target = 1.0 - S * S;
    for (const auto& t : per_trial) {
      if (t) p.pair_count += (*t)[b];
    }
    result.points.push_back(p);
  }
  return result;
}

StatReport CorrelationResult::to_report() const {
  StatReport r;
  r.statistic = "two_point_correlation";
  r.layout = CsvLayout::correlation;
  r.requested_trials = query.trials;
  r.failed_trials = failed_trials;
  for (const auto& p : points) {
    ReportRow row;
    row.statistic = "R2";
    row.E = query.E;
    row.scale = "s";
    row.N = N;
    row.K_or_eta = p.s;
    row.estimate = p.estimate.mean;
    row.stderr_ = p.estimate.stderr_;
    row.trials = valid_trials;
    row.seed = seed;
    row.extras = {{"sine_target", p.target}, {"pair_count", static_cast<double>(p.pair_count)}};
    r.rows.push_back(std::move(row));
  }
  r.summary["W"] = query.W;
  r.summary["bin_width"] = query.bin_width;
  r.summary["rho_sc"] = rho;
  return r;
}

}  // namespace wigner
