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

#ifndef WIGNER_DISTRIBUTIONS_HPP
#define WIGNER_DISTRIBUTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wigner/rng.hpp"

namespace wigner {

enum class LawKind { gaussian, uniform, bernoulli, smoothed_bernoulli };

std::string_view to_string(LawKind kind);

/// Centred scalar law used for the real components of matrix entries.
///
/// Every built-in has mean zero. smoothed_bernoulli is the convolution of a
/// symmetric two-point law at +-a with a centred Gaussian of width sigma_mix,
/// where a^2 + sigma_mix^2 equals the declared variance.
class EntryDistribution {
 public:
  static EntryDistribution make_builtin(LawKind kind, double variance,
                                        std::optional<double> sigma_mix = {});

  /// Parses "name:variance[:sigma_mix]", e.g. "gaussian:0.5".
  static EntryDistribution parse(std::string_view text);

  LawKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double mean() const noexcept { return 0.0; }
  double variance() const noexcept { return variance_; }
  double fourth_moment() const noexcept;
  std::optional<double> sigma_mix() const noexcept { return sigma_mix_; }

  /// Metadata only: a nu with E exp(nu x^2) finite.
  double subgaussian_nu() const noexcept;

  bool has_density() const noexcept { return kind_ != LawKind::bernoulli; }
  /// Score h'/h exists wherever h is differentiable on all of its support.
  bool has_score() const noexcept {
    return kind_ == LawKind::gaussian || kind_ == LawKind::smoothed_bernoulli;
  }

  /// Density h. Throws HypothesisError for bernoulli.
  double density(double s) const;
  /// h'(s)/h(s). Throws HypothesisError when !has_score().
  double score(double s) const;

  /// Closed support interval; infinite ends for unbounded laws.
  std::pair<double, double> support() const noexcept;

  /// One draw; consumes at most four 64-bit words from the stream.
  double draw(DrawStream& stream) const noexcept;

  /// Canonical "name:variance[:sigma_mix]" form (17 significant digits).
  std::string to_string() const;

 private:
  EntryDistribution() = default;

  LawKind kind_ = LawKind::gaussian;
  std::string name_;
  double variance_ = 1.0;
  std::optional<double> sigma_mix_;
  double scale_ = 1.0;  // sigma (gaussian), half-width (uniform), atom (bernoulli/smoothed)
};

struct ScoreIntegral {
  double value = 0.0;
  bool diverges = false;
};

/// \int (h'/h)^power h ds by adaptive quadrature. power must be 2 or 4.
/// Throws HypothesisError if the law has no density; laws with a density but
/// no classical score (uniform) report divergence.
ScoreIntegral score_integral(const EntryDistribution& d, int power);

/// \int h ds by the same quadrature used for score integrals.
double density_mass(const EntryDistribution& d);

/// n iid draws; deterministic in (d, n, seed).
std::vector<double> sample(const EntryDistribution& d, std::size_t n,
                           std::uint64_t seed);

}  // namespace wigner

#endif  // WIGNER_DISTRIBUTIONS_HPP
