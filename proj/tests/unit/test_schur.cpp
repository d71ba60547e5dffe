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

#include <algorithm>
#include <cmath>
#include <set>

#include "wigner/errors.hpp"
#include "wigner/schur.hpp"
#include "wigner/spectral.hpp"

using namespace wigner;
using cd = std::complex<double>;

namespace {

// Diagonal H whose minor (j = 0) has exactly the given spectrum.
ComplexMatrix with_minor_spectrum(double h00, const std::vector<double>& lambdas) {
  ComplexMatrix h = ComplexMatrix::Zero(lambdas.size() + 1, lambdas.size() + 1);
  h(0, 0) = h00;
  for (std::size_t a = 0; a < lambdas.size(); ++a) h(a + 1, a + 1) = lambdas[a];
  return h;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("2x2 hand example") {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  const cd z(0.0, 1.0);
  const cd expected = cd(1.0, 1.0) / 3.0;
  CHECK(rel(schur_diagonal(h, 0, z), expected) < 1e-15);
  CHECK(rel(direct_resolvent_diagonal(h, 0, z), expected) < 1e-15);
}

TEST_CASE("diagonal matrices reduce to 1/(h_jj - z)") {
  const auto h = with_minor_spectrum(0.4, {-1.0, 0.2, 0.9});
  const cd z(0.1, 0.05);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(rel(schur_diagonal(h, j, z), 1.0 / (h(j, j) - z)) < 1e-15);
  }
  CHECK_THROWS_AS(schur_diagonal(h, 0, cd(0.1, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(schur_diagonal(h, 4, z), InvalidArgument);
}

TEST_CASE("schur agrees with direct inversion on random GUE") {
  for (std::size_t N : {9, 20, 50}) {
    const auto spec = EnsembleSpec::gue(N, 31);
    for (std::size_t t = 0; t < 3; ++t) {
      const auto h = sample_matrix(spec, t).h;
      for (double E : {0.0, 1.0}) {
        for (double eps : {1e-3, 0.1, 1.0}) {
          const cd z(E, eps / double(N));
          for (std::size_t j = 0; j < N; ++j) {
            CHECK(rel(schur_diagonal(h, j, z), direct_resolvent_diagonal(h, j, z)) < 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("decomposition invariants") {
  const std::size_t N = 30;
  const auto spec = EnsembleSpec::gue(N, 17);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto h = sample_matrix(spec, t).h;
    for (double eps : {1e-3, 0.1, 1.0}) {
      for (std::size_t j : {std::size_t{0}, std::size_t{13}, N - 1}) {
        const double E = 0.4;
        const auto dec = decompose(h, j, E, eps);
        REQUIRE(dec.overlaps.size() == N - 1);
        double zsum = 0.0;
        for (double z : dec.overlaps) zsum += z;
        CHECK(std::abs(zsum - dec.b_norm_sq) <= 1e-8 * dec.b_norm_sq);
        for (std::size_t a = 0; a < N - 1; ++a) {
          const double x = double(N) * (dec.minor_eigenvalues[a] - E);
          const double q = x * x + eps * eps;
          CHECK(dec.c[a] > 0.0);
          CHECK(dec.c[a] <= 1.0 / eps);
          CHECK(std::abs(dec.c[a] * q - eps) <= 1e-12 * eps);
          CHECK(std::abs(dec.d[a] * q - x) <= 1e-12 * std::abs(x));
          CHECK((dec.d[a] > 0.0) == (x > 0.0));
        }
        CHECK(dec.imaginary_weight() > 0.0);
        const cd z(E, eps / double(N));
        const cd schur = schur_diagonal(h, j, z);
        CHECK(rel(dec.resolvent(), schur) < 1e-10);
        const double abs_sq = std::norm(dec.spectral_denominator());
        CHECK(std::abs(dec.decomposed_denominator_abs_sq() - abs_sq) <= 1e-10 * abs_sq);
        CHECK(std::abs(dec.imaginary_weight() + dec.spectral_denominator().imag()) <=
              1e-10 * dec.imaginary_weight());
      }
    }
  }
}

TEST_CASE("eigenvalue exactly at E") {
  const auto dec = decompose(with_minor_spectrum(0.0, {-0.5, 0.25, 0.7}), 0, 0.25, 0.1);
  CHECK(dec.c[1] == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(dec.d[1] == 0.0);
  CHECK_THROWS_AS(decompose(with_minor_spectrum(0.0, {1.0, 2.0}), 0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("minor and column draw indices are disjoint") {
  for (std::size_t N : {2, 9, 15}) {
    for (std::size_t j : {std::size_t{0}, N / 2, N - 1}) {
      const auto m = minor_draw_indices(N, j);
      const auto c = column_draw_indices(N, j);
      CHECK(m.size() == (N - 1) * (N - 1));
      CHECK(c.size() == 2 * (N - 1));
      std::vector<std::uint64_t> both;
      std::set_intersection(m.begin(), m.end(), c.begin(), c.end(), std::back_inserter(both));
      CHECK(both.empty());
      std::set<std::uint64_t> all(m.begin(), m.end());
      all.insert(c.begin(), c.end());
      all.insert(entry_draw_index(N, j, j, 0));
      CHECK(all.size() == N * N);
    }
  }
}

TEST_CASE("omega: spectrum far from E") {
  const std::size_t N = 10;
  const double eps = 0.1;
  std::vector<double> lambdas;
  for (int k = 1; k <= 9; ++k) lambdas.push_back((k % 2 ? 1.0 : -1.0) * (10.0 + k) * eps / double(N));
  const auto dec = decompose(with_minor_spectrum(0.0, lambdas), 0, 0.0, eps);
  const auto cls = classify_omega(dec);
  CHECK(cls.omega);
  CHECK(cls.selection_complete);
  CHECK(cls.outside_count == 9);
  std::vector<double> dist;
  for (double l : lambdas) dist.push_back(double(N) * std::abs(l));
  std::sort(dist.begin(), dist.end());
  CHECK(cls.delta == doctest::Approx(dist[5]).epsilon(1e-14));
  CHECK(omega_bounds_hold(dec, cls));
}

TEST_CASE("omega complement: three eigenvalues at E") {
  const double eps = 0.1;
  const double E = 0.2;
  const auto dec = decompose(with_minor_spectrum(0.0, {E, E, E, -1, -0.5, 0.6, 1.0, 1.5}), 0, E, eps);
  const auto cls = classify_omega(dec);
  CHECK_FALSE(cls.omega);
  CHECK(cls.outside_count == 5);
  REQUIRE(cls.betas.size() == 3);
  for (std::size_t b : cls.betas) {
    CHECK(dec.c[b] == doctest::Approx(1.0 / eps));
    CHECK(dec.c[b] > 1.0 / (2.0 * eps));
  }
  CHECK(omega_bounds_hold(dec, cls));
}

TEST_CASE("omega ties go to the smaller index") {
  const double eps = 0.1;
  // symmetric pairs around E = 0, N = 9
  const auto dec = decompose(with_minor_spectrum(0.0, {-0.4, -0.3, -0.2, -0.1, 0.1, 0.2, 0.3, 0.4}), 0, 0.0, eps);
  const auto cls = classify_omega(dec);
  REQUIRE(cls.alphas.size() == 6);
  CHECK(cls.alphas[0] == 3);
  CHECK(cls.alphas[1] == 4);
  CHECK(cls.alphas[2] == 2);
  CHECK(cls.alphas[3] == 5);
}

TEST_CASE("omega needs N - 1 >= 8") {
  const auto dec = decompose(with_minor_spectrum(0.0, {-0.3, -0.2, -0.1, 0.1, 0.2, 0.3, 0.4}), 0, 0.0, 0.1);
  CHECK_THROWS_AS(classify_omega(dec), InvalidArgument);
}

TEST_CASE("omega chains hold on random GUE minors (brute force)") {
  const std::size_t N = 50;
  const double eps = 0.1;
  const auto spec = EnsembleSpec::gue(N, 44);
  std::size_t omega_trials = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const auto dec = decompose(sample_matrix(spec, t).h, 0, 0.0, eps, false);
    const auto cls = classify_omega(dec);
    std::vector<double> dist;
    for (double l : dec.minor_eigenvalues) dist.push_back(double(N) * std::abs(l));
    const auto outside = std::count_if(dist.begin(), dist.end(), [&](double x) { return x > eps / 2; });
    REQUIRE(cls.omega == (outside >= 6));
    if (!cls.omega) continue;
    ++omega_trials;
    std::vector<double> selectable;
    for (double x : dist) if (x >= eps) selectable.push_back(x);
    std::sort(selectable.begin(), selectable.end());
    REQUIRE(cls.selection_complete);
    CHECK(cls.delta == selectable[5]);
    for (std::size_t a : cls.alphas) {
      CHECK(dist[a] >= eps);
      CHECK(dist[a] <= cls.delta);
    }
    CHECK(omega_bounds_hold(dec, cls));
  }
  CHECK(omega_trials > 900);
}

TEST_CASE("delta tail") {
  const auto spec = EnsembleSpec::gue(9, 2);
  const auto r = delta_tail(spec, 0.0, 0.1, {1.0, 2.0, 4.0, 8.0}, {9, 20}, 200);
  REQUIRE(r.points.size() == 2);
  for (const auto& p : r.points) {
    for (std::size_t i = 0; i + 1 < p.survival.size(); ++i) {
      CHECK(p.survival[i + 1].survival <= p.survival[i].survival);
    }
    CHECK(p.omega_delta_cubed.mean > 0.0);
    CHECK(p.valid_trials == 200);
  }
  CHECK_THROWS_AS(delta_tail(spec, 0.0, 0.1, {1.0}, {8}, 10), InvalidArgument);
  CHECK_THROWS_AS(delta_tail(spec, 0.0, 0.1, {2.0, 1.0}, {9}, 10), InvalidArgument);
  CHECK(to_csv(delta_tail(spec, 0.0, 0.1, {1.0, 2.0}, {9, 12}, 40, {1}).to_report()) ==
        to_csv(delta_tail(spec, 0.0, 0.1, {1.0, 2.0}, {9, 12}, 40, {3}).to_report()));
}

TEST_CASE("schur check summary") {
  const auto r = schur_check(EnsembleSpec::gue(12, 3), {0.0, 1.0}, {1e-3, 0.1}, 3);
  CHECK(r.rows.size() == 12);
  CHECK(r.max_schur_vs_direct < 1e-10);
  CHECK(r.max_spectral_vs_schur < 1e-10);
  CHECK(r.max_decomposition < 1e-10);
  CHECK(r.to_report().rows.size() == 12);
}
