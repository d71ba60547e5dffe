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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wigner/distributions.hpp"
#include "wigner/errors.hpp"
#include "wigner/stats.hpp"

using namespace wigner;

namespace {

EntryDistribution law(const char* text) { return EntryDistribution::parse(text); }

void check_sample_moments(const EntryDistribution& d, std::uint64_t seed) {
  const std::size_t n = 1000000;
  const auto xs = sample(d, n, seed);
  const auto m = mean_with_stderr(xs);
  CHECK(std::abs(m.mean) < 4.0 * m.stderr_);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = xs[i] * xs[i];
  const auto v = mean_with_stderr(sq);
  CHECK(std::abs(v.mean - d.variance()) <= 4.0 * v.stderr_ + 1e-12);  // bernoulli: x^2 is constant
}

}  // namespace

TEST_CASE("gaussian with variance 1/2") {
  const auto g = law("gaussian:0.5");
  CHECK(g.kind() == LawKind::gaussian);
  CHECK(g.has_density());
  CHECK(g.has_score());
  for (double s : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
    CHECK(g.density(s) == doctest::Approx(std::exp(-s * s) / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(g.score(s) == doctest::Approx(-2.0 * s).epsilon(1e-14));
  }
  CHECK(g.fourth_moment() == doctest::Approx(0.75));
}

TEST_CASE("bernoulli with variance 1/2 is a two-point law without density") {
  const auto b = law("bernoulli:0.5");
  CHECK_FALSE(b.has_density());
  CHECK_THROWS_AS(b.density(0.1), HypothesisError);
  const auto xs = sample(b, 1000, 3);
  for (double x : xs) CHECK(std::abs(std::abs(x) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("uniform with variance 1/2") {
  const auto u = law("uniform:0.5");
  const double edge = std::sqrt(1.5);
  CHECK(u.support().first == doctest::Approx(-edge));
  CHECK(u.support().second == doctest::Approx(edge));
  CHECK(u.density(0.3) == doctest::Approx(1.0 / (2.0 * edge)));
  CHECK(u.density(edge + 1e-9) == 0.0);
  const auto xs = sample(u, 1000000, 1);
  bool inside = true;
  for (double x : xs) inside = inside && x >= -edge && x <= edge;
  CHECK(inside);
}

TEST_CASE("score integrals of the gaussian") {
  const auto g = law("gaussian:0.5");
  const auto s4 = score_integral(g, 4);
  const auto s2 = score_integral(g, 2);
  CHECK_FALSE(s4.diverges);
  CHECK(std::abs(s4.value - 12.0) < 1e-6);
  CHECK(std::abs(s2.value - 2.0) < 1e-6);
  CHECK_THROWS_AS(score_integral(g, 3), InvalidArgument);
}

TEST_CASE("score integral gates") {
  CHECK_THROWS_AS(score_integral(law("bernoulli:0.5"), 4), HypothesisError);
  try {
    score_integral(law("bernoulli:0.5"), 4);
  } catch (const HypothesisError& e) {
    CHECK(std::string(e.what()).find("no density") != std::string::npos);
  }
  CHECK(score_integral(law("uniform:0.5"), 4).diverges);
}

TEST_CASE("densities integrate to one") {
  for (const char* text : {"gaussian:0.5", "gaussian:1", "uniform:0.5", "smoothed_bernoulli:0.5:0.05",
                           "smoothed_bernoulli:0.5:0.1", "smoothed_bernoulli:0.5:0.3",
                           "smoothed_bernoulli:1:0.5"}) {
    CAPTURE(text);
    CHECK(std::abs(density_mass(law(text)) - 1.0) < 1e-8);
  }
}

TEST_CASE("score matches the numerical derivative of the density") {
  for (const char* text : {"gaussian:0.5", "smoothed_bernoulli:0.5:0.1", "smoothed_bernoulli:0.5:0.3"}) {
    CAPTURE(text);
    const auto d = law(text);
    for (double s = -1.5; s <= 1.5; s += 0.0625) {
      const double h = 1e-5;
      const double deriv = (d.density(s + h) - d.density(s - h)) / (2.0 * h);
      const double lhs = d.score(s) * d.density(s);
      CAPTURE(s);
      CHECK(std::abs(lhs - deriv) <= 1e-6 * std::max(std::abs(deriv), 1e-3));
    }
  }
}

TEST_CASE("smoothed bernoulli score integral grows as the smoothing shrinks") {
  double previous = 0.0;
  for (double sigma : {0.5, 0.3, 0.1, 0.05}) {
    const auto d = EntryDistribution::make_builtin(LawKind::smoothed_bernoulli, 0.5, sigma);
    const auto si = score_integral(d, 4);
    CAPTURE(sigma);
    CHECK_FALSE(si.diverges);
    CHECK(std::isfinite(si.value));
    CHECK(si.value > previous);
    previous = si.value;
  }
}

TEST_CASE("sampler moments") {
  check_sample_moments(law("gaussian:0.5"), 7);
  check_sample_moments(law("uniform:0.5"), 8);
  check_sample_moments(law("bernoulli:0.5"), 9);
  check_sample_moments(law("smoothed_bernoulli:0.5:0.1"), 10);
}

TEST_CASE("sampling is deterministic") {
  for (const char* text : {"gaussian:0.5", "uniform:0.5", "bernoulli:0.5", "smoothed_bernoulli:0.5:0.1"}) {
    const auto d = law(text);
    CHECK(sample(d, 5, 42) == sample(d, 5, 42));
    CHECK(sample(d, 5, 42) != sample(d, 5, 43));
  }
}

TEST_CASE("parsing") {
  CHECK(law("gaussian:0.5").to_string() == "gaussian:0.5");
  CHECK(law("smoothed_bernoulli:0.5:0.1").sigma_mix().value() == doctest::Approx(0.1));
  CHECK(EntryDistribution::parse(law("smoothed_bernoulli:0.5:0.1").to_string()).to_string() ==
        law("smoothed_bernoulli:0.5:0.1").to_string());
  CHECK_THROWS_AS(law("cauchy:0.5"), InvalidArgument);
  CHECK_THROWS_AS(law("gaussian"), InvalidArgument);
  CHECK_THROWS_AS(law("gaussian:-1"), InvalidArgument);
  CHECK_THROWS_AS(law("gaussian:0"), InvalidArgument);
  CHECK_THROWS_AS(law("gaussian:abc"), InvalidArgument);
  CHECK_THROWS_AS(law("gaussian:0.5:0.1"), InvalidArgument);
  CHECK_THROWS_AS(law("smoothed_bernoulli:0.5"), InvalidArgument);
  CHECK_THROWS_AS(law("smoothed_bernoulli:0.5:0.8"), InvalidArgument);
  CHECK_THROWS_AS(law("smoothed_bernoulli:0.5:0"), InvalidArgument);
}

TEST_CASE("sub-gaussian metadata is positive") {
  for (const char* text : {"gaussian:0.5", "uniform:0.5", "bernoulli:0.5", "smoothed_bernoulli:0.5:0.1"}) {
    CHECK(law(text).subgaussian_nu() > 0.0);
  }
}
