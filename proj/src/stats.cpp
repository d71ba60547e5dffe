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

#include "wigner/stats.hpp"

#include <algorithm>
#include <cmath>

#include "wigner/errors.hpp"

namespace wigner {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanEstimate mean_with_stderr(std::span<const double> xs) {
  MeanEstimate m;
  m.count = xs.size();
  if (xs.empty()) throw EmptySample("mean_with_stderr: empty sample");
  const double n = static_cast<double>(xs.size());
  m.mean = pairwise_sum(xs) / n;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(),
                   [&](double x) { return (x - m.mean) * (x - m.mean); });
    const double var = pairwise_sum(sq) / (n - 1.0);
    m.stderr_ = std::sqrt(var / n);
  }
  return m;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw EmptySample("wilson_interval: zero trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // the limits are exactly 0 and 1 at the boundary counts
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> variance) {
  if (x.size() != y.size() || x.size() != variance.size() || x.size() < 2) {
    throw InvalidArgument("weighted_line_fit: need at least two matching points");
  }
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = 1.0 / variance[i];
    s += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }
  const double det = s * sxx - sx * sx;
  if (!(det > 0.0)) throw InvalidArgument("weighted_line_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = (s * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  fit.slope_stderr = std::sqrt(s / det);
  fit.intercept_stderr = std::sqrt(sxx / det);
  return fit;
}

double slope_through_origin(std::span<const double> x, std::span<const double> y) {
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (!(sxx > 0.0)) throw InvalidArgument("slope_through_origin: all abscissae zero");
  return sxy / sxx;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw EmptySample("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

Interval quantile_interval(std::vector<double> xs, double q, double z) {
  if (xs.empty()) throw EmptySample("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  const double centre = n * q;
  const double half = z * std::sqrt(n * q * (1.0 - q));
  const auto clamp_rank = [&](double r) {
    const double k = std::clamp(std::round(r), 1.0, n);
    return xs[static_cast<std::size_t>(k) - 1];
  };
  return {clamp_rank(centre - half), clamp_rank(centre + half + 1.0)};
}

}  // namespace wigner
