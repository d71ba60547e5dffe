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

#include "wigner/wegner.hpp"

#include <algorithm>
#include <cmath>

#include "wigner/distributions.hpp"
#include "wigner/errors.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

WegnerResult wegner_probability(const WegnerQuery& query, const EnsembleSpec& spec,
                                const RunOptions& options) {
  spec.validate();
  if (query.trials == 0) throw InvalidArgument("wegner: need at least one trial");
  if (query.epsilons.empty()) throw InvalidArgument("wegner: empty epsilon grid");
  for (double eps : query.epsilons) {
    if (!(eps > 0.0)) throw InvalidArgument("wegner: every epsilon must be positive");
  }
  if (!(query.kappa > 0.0)) throw InvalidArgument("wegner: kappa must be positive");
  if (std::abs(query.E) > 2.0 - query.kappa) {
    throw InvalidArgument("wegner: need |E| <= 2 - kappa");
  }

  WegnerResult result;
  result.query = query;
  result.N = spec.N;
  result.seed = spec.seed;
  if (spec.N < 9) {
    result.below_min_dimension = true;
    result.flags.push_back("N < 9: outside the dimension range of the Wegner bound");
  }
  if (!spec.offdiag.has_density()) {
    result.density_hypothesis_holds = false;
    result.flags.push_back("entry law has no density: the bound P <= C eps is not expected to hold uniformly in eps");
  } else if (score_integral(spec.offdiag, 4).diverges) {
    result.density_hypothesis_holds = false;
    result.flags.push_back("entry law has an infinite fourth score moment: Wegner regularity hypothesis fails");
  }

  const double n = static_cast<double>(spec.N);
  const auto& eps = query.epsilons;
  auto counts = run_trials(query.trials, options.jobs, [&](std::size_t trial) {
    const auto s = eigen_decompose(sample_matrix(spec, trial), false);
    std::vector<std::uint32_t> c(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double half = eps[i] / (2.0 * n);
      c[i] = static_cast<std::uint32_t>(counting(s, query.E - half, query.E + half));
    }
    return c;
  });

  result.points.resize(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) result.points[i].epsilon = eps[i];
  for (const auto& c : counts) {
    if (!c) {
      ++result.failed_trials;
      continue;
    }
    ++result.valid_trials;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const std::uint64_t k = (*c)[i];
      auto& p = result.points[i];
      p.hits += k >= 1 ? 1 : 0;
      p.count_sum += k;
      p.count_sq_sum += k * k;
    }
  }
  if (result.valid_trials == 0) throw EmptySample("wegner: every trial failed");

  const double m = static_cast<double>(result.valid_trials);
  std::vector<double> xs, ys;
  for (auto& p : result.points) {
    p.p_hat = static_cast<double>(p.hits) / m;
    p.p_stderr = std::sqrt(p.p_hat * (1.0 - p.p_hat) / m);
    p.wilson = wilson_interval(p.hits, result.valid_trials);
    p.mean_count = static_cast<double>(p.count_sum) / m;
    p.mean_count_sq = static_cast<double>(p.count_sq_sum) / m;
    p.ratio = p.p_hat / p.epsilon;
    p.ratio_stderr = p.p_stderr / p.epsilon;
    xs.push_back(p.epsilon);
    ys.push_back(p.p_hat);
  }
  result.slope = slope_through_origin(xs, ys);
  const auto [lo, hi] = std::minmax_element(
      result.points.begin(), result.points.end(),
      [](const WegnerPoint& a, const WegnerPoint& b) { return a.ratio < b.ratio; });
  result.min_ratio = lo->ratio;
  result.max_ratio = hi->ratio;
  return result;
}

StatReport WegnerResult::to_report() const {
  StatReport r;
  r.statistic = "wegner";
  r.requested_trials = query.trials;
  r.failed_trials = failed_trials;
  r.flags = flags;
  for (const auto& p : points) {
    ReportRow row;
    row.statistic = "wegner_probability";
    row.E = query.E;
    row.scale = "epsilon";
    row.N = N;
    row.K_or_eta = p.epsilon;
    row.estimate = p.p_hat;
    row.stderr_ = p.p_stderr;
    row.trials = valid_trials;
    row.seed = seed;
    row.extras = {{"wilson_lo", p.wilson.lo},
                  {"wilson_hi", p.wilson.hi},
                  {"mean_count", p.mean_count},
                  {"mean_count_sq", p.mean_count_sq},
                  {"ratio", p.ratio}};
    r.rows.push_back(std::move(row));
  }
  r.summary["slope_through_origin"] = slope;
  r.summary["max_ratio"] = max_ratio;
  r.summary["min_ratio"] = min_ratio;
  r.summary["kappa"] = query.kappa;
  r.summary["below_min_dimension"] = below_min_dimension;
  r.summary["density_hypothesis_holds"] = density_hypothesis_holds;
  return r;
}

std::vector<GapPoint> survival_points(std::span<const double> values,
                                      const std::vector<double>& K_grid) {
  std::vector<GapPoint> points;
  for (double k : K_grid) {
    GapPoint p;
    p.K = k;
    p.exceedances = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [k](double d) { return d >= k; }));
    p.survival = values.empty() ? 0.0
                                : static_cast<double>(p.exceedances) / static_cast<double>(values.size());
    p.wilson = values.empty() ? Interval{} : wilson_interval(p.exceedances, values.size());
    points.push_back(p);
  }
  return points;
}

bool fit_stretched_exponential(const std::vector<GapPoint>& points, std::size_t n,
                               LineFit& fit, std::vector<double>& used_K) {
  std::vector<double> x, y, var;
  used_K.clear();
  const double nn = static_cast<double>(n);
  for (const auto& p : points) {
    // P == 1 carries no tail information and has zero binomial variance
    if (p.exceedances < kMinTailExceedances || p.exceedances == n) continue;
    x.push_back(std::sqrt(p.K));
    y.push_back(std::log(p.survival));
    var.push_back((1.0 - p.survival) / (nn * p.survival));
    used_K.push_back(p.K);
  }
  if (x.size() < 2) return false;
  fit = weighted_line_fit(x, y, var);
  return true;
}

GapResult gap_tail(const EnsembleSpec& spec, double E, const std::vector<double>& K_grid,
                   std::size_t trials, const RunOptions& options) {
  spec.validate();
  if (!(std::abs(E) < 2.0)) throw InvalidArgument("gap_tail: need |E| < 2");
  if (trials == 0) throw InvalidArgument("gap_tail: need at least one trial");
  if (K_grid.empty()) throw InvalidArgument("gap_tail: empty K grid");
  for (std::size_t i = 0; i < K_grid.size(); ++i) {
    if (!(K_grid[i] > 0.0) || (i > 0 && !(K_grid[i] > K_grid[i - 1]))) {
      throw InvalidArgument("gap_tail: K grid must be positive and strictly increasing");
    }
  }

  const double n = static_cast<double>(spec.N);
  // nullopt inside the optional marks a censored trial
  auto deltas = run_trials(trials, options.jobs, [&](std::size_t trial) -> std::optional<double> {
    const auto s = eigen_decompose(sample_matrix(spec, trial), false);
    const auto& mu = s.eigenvalues;
    const auto above = std::lower_bound(mu.begin(), mu.end(), E);  // first mu >= E
    const auto alpha = static_cast<std::size_t>(above - mu.begin());
    if (alpha == 0 || alpha == mu.size()) return std::nullopt;
    return n * (*above - E);
  });

  GapResult result;
  result.E = E;
  result.N = spec.N;
  result.seed = spec.seed;
  result.requested_trials = trials;
  for (const auto& d : deltas) {
    if (!d) ++result.failed_trials;
    else if (!*d) ++result.censored;
    else result.deltas.push_back(**d);
  }
  if (result.deltas.empty()) throw EmptySample("gap_tail: every trial was censored or failed");

  result.points = survival_points(result.deltas, K_grid);
  result.fit_available =
      fit_stretched_exponential(result.points, result.deltas.size(), result.fit, result.fit_K);
  return result;
}

StatReport GapResult::to_report() const {
  StatReport r;
  r.statistic = "gap_tail";
  r.requested_trials = requested_trials;
  r.failed_trials = failed_trials;
  const double m = static_cast<double>(deltas.size());
  for (const auto& p : points) {
    ReportRow row;
    row.statistic = "gap_survival";
    row.E = E;
    row.scale = "K";
    row.N = N;
    row.K_or_eta = p.K;
    row.estimate = p.survival;
    row.stderr_ = std::sqrt(p.survival * (1.0 - p.survival) / m);
    row.trials = deltas.size();
    row.seed = seed;
    row.extras = {{"exceedances", static_cast<double>(p.exceedances)},
                  {"wilson_lo", p.wilson.lo},
                  {"wilson_hi", p.wilson.hi}};
    r.rows.push_back(std::move(row));
  }
  r.summary["censored"] = censored;
  r.summary["fit_available"] = fit_available;
  if (fit_available) {
    r.summary["fit_a"] = fit.intercept;
    r.summary["fit_b"] = decay_rate();
    r.summary["fit_b_stderr"] = decay_rate_stderr();
    r.summary["fit_K"] = fit_K;
  }
  return r;
}

}  // namespace wigner
