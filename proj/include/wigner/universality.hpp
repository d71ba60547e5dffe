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

#ifndef WIGNER_UNIVERSALITY_HPP
#define WIGNER_UNIVERSALITY_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/report.hpp"
#include "wigner/stats.hpp"

namespace wigner {

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// M_v = ||v||_p * n^{1/2 - 1/p} with n = dim v; p = infinity uses max |v_i|.
/// Equals 1 for the flat unit vector and n^{1/2 - 1/p} for a coordinate
/// vector. Requires p > 2.
double normalized_lp_norm(const ComplexVector& v, double p);

struct DelocQuery {
  double E = 0.0;
  double K = 5.0;  // window half-width in units of 1/N
  double p = 4.0;
  std::size_t trials = 1;
  bool randomize_phases = false;  // multiply eigenvectors by random unit phases
};

struct DelocResult {
  DelocQuery query;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // M_v, trial order then eigenvalue order
  std::size_t valid_trials = 0;
  std::size_t skipped_trials = 0;  // empty window
  std::size_t failed_trials = 0;
  double max = 0.0;
  MeanEstimate mean;
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
  Interval q99_interval;

  StatReport to_report() const;
};

/// Per trial, M_v over eigenvectors with |mu - E| <= K/N.
DelocResult deloc_statistic(const EnsembleSpec& spec, const DelocQuery& query,
                            const RunOptions& options = {});

/// sin(pi x)/(pi x), 1 at the origin (series for |x| < 1e-4).
double sine_kernel(double x);

struct CorrelationQuery {
  double E = 0.0;
  std::vector<double> s_grid;
  double W = 10.0;          // window half-width, rescaled units
  double bin_width = 0.25;  // bins centred on s_grid
  std::size_t trials = 1;
  bool reflect = false;     // use -mu (spectrum reflection) and -E
};

struct CorrelationPoint {
  double s = 0.0;
  MeanEstimate estimate;  // R2(s)
  double target = 0.0;    // 1 - S(s)^2
  std::uint64_t pair_count = 0;
};

struct CorrelationResult {
  CorrelationQuery query;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  double rho = 0.0;
  std::vector<CorrelationPoint> points;
  std::size_t valid_trials = 0;
  std::size_t failed_trials = 0;

  StatReport to_report() const;
};

/// Pairs x_i < x_j of rescaled positions x = N rho_sc(E) (mu - E) inside
/// [-W, W], histogrammed by s = x_j - x_i. A pair at separation s fits in
/// the window in 2W - s ways, so the bin count is divided by
/// trials * bin_width * (2W - s).
CorrelationResult two_point_correlation(const EnsembleSpec& spec, const CorrelationQuery& query,
                                        const RunOptions& options = {});

}  // namespace wigner

#endif  // WIGNER_UNIVERSALITY_HPP
