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

#ifndef WIGNER_WEGNER_HPP
#define WIGNER_WEGNER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/report.hpp"
#include "wigner/stats.hpp"

namespace wigner {

/// Probability of finding an eigenvalue in [E - eps/2N, E + eps/2N].
struct WegnerQuery {
  double E = 0.0;
  double kappa = 0.5;
  std::vector<double> epsilons;
  std::size_t trials = 0;
};

struct WegnerPoint {
  double epsilon = 0.0;
  std::size_t hits = 0;          // trials with N_eps >= 1
  std::uint64_t count_sum = 0;   // sum of N_eps
  std::uint64_t count_sq_sum = 0;
  double p_hat = 0.0;
  double p_stderr = 0.0;
  Interval wilson;
  double mean_count = 0.0;
  double mean_count_sq = 0.0;
  double ratio = 0.0;  // p_hat / eps
  double ratio_stderr = 0.0;
};

struct WegnerResult {
  WegnerQuery query;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::vector<WegnerPoint> points;
  std::size_t valid_trials = 0;
  std::size_t failed_trials = 0;
  double slope = 0.0;  // least squares P ~ C eps through the origin
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  bool below_min_dimension = false;  // N < 9
  bool density_hypothesis_holds = true;
  std::vector<std::string> flags;

  StatReport to_report() const;
};

/// Monte Carlo estimate of P(N_eps >= 1), E N_eps and E N_eps^2 on an eps
/// grid. Throws InvalidArgument for eps <= 0, |E| > 2 - kappa or zero
/// trials; N < 9 and laws without a regular density are flagged, not
/// rejected.
WegnerResult wegner_probability(const WegnerQuery& query, const EnsembleSpec& spec,
                                const RunOptions& options = {});

struct GapPoint {
  double K = 0.0;
  std::size_t exceedances = 0;  // Delta >= K
  double survival = 0.0;
  Interval wilson;
};

/// Rescaled distance Delta = N (mu_{alpha+1} - E) from E to the first
/// eigenvalue above it, alpha being the last eigenvalue strictly below E.
struct GapResult {
  double E = 0.0;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::size_t requested_trials = 0;
  std::vector<double> deltas;  // non-censored trials, in trial order
  std::size_t censored = 0;
  std::size_t failed_trials = 0;
  std::vector<GapPoint> points;
  bool fit_available = false;
  LineFit fit;  // log P ~ a - b sqrt(K), reported as intercept a, slope -b
  std::vector<double> fit_K;

  double decay_rate() const noexcept { return -fit.slope; }
  double decay_rate_stderr() const noexcept { return fit.slope_stderr; }
  StatReport to_report() const;
};

inline constexpr std::size_t kMinTailExceedances = 50;

GapResult gap_tail(const EnsembleSpec& spec, double E, const std::vector<double>& K_grid,
                   std::size_t trials, const RunOptions& options = {});

/// Empirical survival points of `values` on a K grid, and the
/// log P ~ a - b sqrt(K) fit over points with at least kMinTailExceedances.
std::vector<GapPoint> survival_points(std::span<const double> values,
                                      const std::vector<double>& K_grid);
bool fit_stretched_exponential(const std::vector<GapPoint>& points, std::size_t n,
                               LineFit& fit, std::vector<double>& used_K);

}  // namespace wigner

#endif  // WIGNER_WEGNER_HPP
