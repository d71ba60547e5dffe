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

#ifndef WIGNER_STATS_HPP
#define WIGNER_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace wigner {

/// Pairwise (cascade) summation with a fixed split; result depends only on
/// the order of the input, not on how it was produced.
double pairwise_sum(std::span<const double> xs);

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // standard error of the mean
  std::size_t count = 0;
};

/// Sample mean and standard error (unbiased variance / count).
MeanEstimate mean_with_stderr(std::span<const double> xs);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_stderr = 0.0;
  double slope_stderr = 0.0;
};

/// Weighted least squares y ~ a + b x with weights 1/variance; standard
/// errors from the inverse normal matrix.
LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> variance);

/// Least squares slope of y ~ b x through the origin.
double slope_through_origin(std::span<const double> x, std::span<const double> y);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> xs, double q);

/// Distribution-free 95% interval for the q-quantile from order statistics.
Interval quantile_interval(std::vector<double> xs, double q, double z = kZ95);

}  // namespace wigner

#endif  // WIGNER_STATS_HPP
