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

#include "wigner/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "wigner/errors.hpp"
#include "wigner/quadrature.hpp"

namespace wigner {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;
constexpr double kDensityFloor = 1e-300;
constexpr double kDivergenceCap = 1e12;

double parse_real(std::string_view token, std::string_view what) {
  std::string buf(token);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + buf +
                          "' as a real number");
  }
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::gaussian: return "gaussian";
    case LawKind::uniform: return "uniform";
    case LawKind::bernoulli: return "bernoulli";
    case LawKind::smoothed_bernoulli: return "smoothed_bernoulli";
  }
  return "unknown";
}

EntryDistribution EntryDistribution::make_builtin(LawKind kind, double variance,
                                                  std::optional<double> sigma_mix) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw InvalidArgument("entry law variance must be positive, got " +
                          fmt17(variance));
  }
  EntryDistribution d;
  d.kind_ = kind;
  d.name_ = std::string(wigner::to_string(kind));
  d.variance_ = variance;
  switch (kind) {
    case LawKind::gaussian:
      d.scale_ = std::sqrt(variance);
      break;
    case LawKind::uniform:
      // width^2 / 12 = variance, half-width = sqrt(3 variance)
      d.scale_ = std::sqrt(3.0 * variance);
      break;
    case LawKind::bernoulli:
      d.scale_ = std::sqrt(variance);
      break;
    case LawKind::smoothed_bernoulli: {
      if (!sigma_mix) {
        throw InvalidArgument("smoothed_bernoulli requires a sigma_mix parameter");
      }
      const double s = *sigma_mix;
      if (!(s > 0.0) || !(s * s < variance)) {
        throw InvalidArgument("smoothed_bernoulli needs 0 < sigma_mix < sqrt(variance), got " +
                              fmt17(s));
      }
      d.sigma_mix_ = s;
      d.scale_ = std::sqrt(variance - s * s);
      break;
    }
  }
  if (kind != LawKind::smoothed_bernoulli && sigma_mix) {
    throw InvalidArgument("sigma_mix only applies to smoothed_bernoulli");
  }
  return d;
}

EntryDistribution EntryDistribution::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw InvalidArgument("entry law must look like name:variance[:sigma_mix], got '" +
                          std::string(text) + "'");
  }
  LawKind kind;
  if (parts[0] == "gaussian") kind = LawKind::gaussian;
  else if (parts[0] == "uniform") kind = LawKind::uniform;
  else if (parts[0] == "bernoulli") kind = LawKind::bernoulli;
  else if (parts[0] == "smoothed_bernoulli") kind = LawKind::smoothed_bernoulli;
  else throw InvalidArgument("unknown entry law '" + std::string(parts[0]) + "'");

  const double variance = parse_real(parts[1], "variance");
  std::optional<double> sigma;
  if (parts.size() == 3) sigma = parse_real(parts[2], "sigma_mix");
  return make_builtin(kind, variance, sigma);
}

double EntryDistribution::fourth_moment() const noexcept {
  const double a = scale_;
  switch (kind_) {
    case LawKind::gaussian: return 3.0 * variance_ * variance_;
    case LawKind::uniform: return a * a * a * a / 5.0;
    case LawKind::bernoulli: return a * a * a * a;
    case LawKind::smoothed_bernoulli: {
      const double s2 = *sigma_mix_ * *sigma_mix_;
      return a * a * a * a + 6.0 * a * a * s2 + 3.0 * s2 * s2;
    }
  }
  return 0.0;
}

double EntryDistribution::subgaussian_nu() const noexcept {
  switch (kind_) {
    case LawKind::gaussian: return 1.0 / (4.0 * variance_);
    case LawKind::smoothed_bernoulli: return 1.0 / (4.0 * *sigma_mix_ * *sigma_mix_);
    default: return 1.0;  // bounded support: any nu works
  }
}

double EntryDistribution::density(double s) const {
  switch (kind_) {
    case LawKind::gaussian: {
      const double z = s / scale_;
      return kInvSqrt2Pi / scale_ * std::exp(-0.5 * z * z);
    }
    case LawKind::uniform:
      return std::abs(s) <= scale_ ? 0.5 / scale_ : 0.0;
    case LawKind::bernoulli:
      throw HypothesisError("bernoulli entry law has no density");
    case LawKind::smoothed_bernoulli: {
      // 1/2 [phi(s-a) + phi(s+a)], factored around the nearer atom
      const double sig = *sigma_mix_;
      const double x = std::abs(s);
      const double near = (x - scale_) / sig;
      const double far_ratio = std::exp(-2.0 * scale_ * x / (sig * sig));
      return 0.5 * kInvSqrt2Pi / sig * std::exp(-0.5 * near * near) * (1.0 + far_ratio);
    }
  }
  return 0.0;
}

double EntryDistribution::score(double s) const {
  switch (kind_) {
    case LawKind::gaussian:
      return -s / variance_;
    case LawKind::smoothed_bernoulli: {
      const double s2 = *sigma_mix_ * *sigma_mix_;
      return (-s + scale_ * std::tanh(scale_ * s / s2)) / s2;
    }
    case LawKind::uniform:
      throw HypothesisError("uniform entry law has no classical score (density jumps at the support edges)");
    case LawKind::bernoulli:
      throw HypothesisError("bernoulli entry law has no density");
  }
  return 0.0;
}

std::pair<double, double> EntryDistribution::support() const noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case LawKind::uniform:
    case LawKind::bernoulli:
      return {-scale_, scale_};
    default:
      return {-inf, inf};
  }
}

double EntryDistribution::draw(DrawStream& stream) const noexcept {
  switch (kind_) {
    case LawKind::gaussian:
      return scale_ * stream.next_normal();
    case LawKind::uniform:
      return scale_ * (2.0 * stream.next_uniform() - 1.0);
    case LawKind::bernoulli:
      return (stream.next_u64() >> 63) ? scale_ : -scale_;
    case LawKind::smoothed_bernoulli: {
      const double atom = (stream.next_u64() >> 63) ? scale_ : -scale_;
      return atom + *sigma_mix_ * stream.next_normal();
    }
  }
  return 0.0;
}

std::string EntryDistribution::to_string() const {
  std::string out = name_ + ":" + fmt17(variance_);
  if (sigma_mix_) out += ":" + fmt17(*sigma_mix_);
  return out;
}

namespace {

// Breakpoints covering the effective support of a smooth law, truncated
// where the density drops below kDensityFloor.
std::vector<double> smooth_breakpoints(const EntryDistribution& d) {
  const double width = d.kind() == LawKind::smoothed_bernoulli ? *d.sigma_mix()
                                                                 : std::sqrt(d.variance());
  const double atom = d.kind() == LawKind::smoothed_bernoulli
                          ? std::sqrt(d.variance() - width * width)
                          : 0.0;
  double edge = atom + width;
  while (d.density(edge) >= kDensityFloor) edge = atom + 1.25 * (edge - atom);

  std::vector<double> pts{-edge, 0.0, edge};
  for (double c : {atom, -atom}) {
    for (double k : {0.0, 1.0, 3.0, 6.0, 12.0, 20.0}) {
      pts.push_back(c + k * width);
      pts.push_back(c - k * width);
    }
  }
  std::erase_if(pts, [edge](double p) { return std::abs(p) > edge; });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

double density_mass(const EntryDistribution& d) {
  if (!d.has_density()) throw HypothesisError("entry law has no density");
  if (d.kind() == LawKind::uniform) {
    const auto [lo, hi] = d.support();
    const double pts[] = {lo, hi};
    return integrate_panels([&](double s) { return d.density(s); }, pts).value;
  }
  const auto pts = smooth_breakpoints(d);
  return integrate_panels([&](double s) { return d.density(s); }, pts).value;
}

ScoreIntegral score_integral(const EntryDistribution& d, int power) {
  if (power != 2 && power != 4) {
    throw InvalidArgument("score_integral power must be 2 or 4");
  }
  if (!d.has_density()) {
    throw HypothesisError("entry law '" + d.to_string() +
                          "' has no density; score-integral hypothesis is inapplicable");
  }
  if (!d.has_score()) {
    // h' carries point masses at the jumps of h
    return {std::numeric_limits<double>::infinity(), true};
  }
  const auto pts = smooth_breakpoints(d);
  const auto result = integrate_panels(
      [&](double s) {
        const double h = d.density(s);
        if (h == 0.0) return 0.0;
        return std::pow(d.score(s), power) * h;
      },
      pts);
  const bool diverges = !std::isfinite(result.value) || result.value > kDivergenceCap;
  return {result.value, diverges};
}

std::vector<double> sample(const EntryDistribution& d, std::size_t n,
                           std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    DrawStream stream(seed, StreamDomain::entry_sample, 0, i);
    out[i] = d.draw(stream);
  }
  return out;
}

}  // namespace wigner
