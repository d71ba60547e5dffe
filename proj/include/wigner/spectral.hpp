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

#ifndef WIGNER_SPECTRAL_HPP
#define WIGNER_SPECTRAL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/report.hpp"
#include "wigner/stats.hpp"

namespace wigner {

/// Sorted eigenvalues and (optionally) the matching orthonormal eigenvectors
/// as columns.
struct SpectralSample {
  std::vector<double> eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// Dense Hermitian eigendecomposition. Throws EigensolverFailure if the
/// solver does not converge.
SpectralSample eigen_decompose(const ComplexMatrix& h, bool want_vectors);
SpectralSample eigen_decompose(const WignerMatrix& h, bool want_vectors);

/// #{alpha : a <= mu_alpha <= b} on sorted eigenvalues (closed interval).
std::size_t counting(std::span<const double> sorted_eigenvalues, double a, double b);
inline std::size_t counting(const SpectralSample& s, double a, double b) {
  return counting(s.eigenvalues, a, b);
}

/// rho_sc(E) = sqrt(4 - E^2) / (2 pi) on [-2, 2], zero outside.
double semicircle_density(double E);

/// Closed-form cumulative distribution of rho_sc, clamped to [0, 1].
double semicircle_cdf(double E);

enum class ScaleRule { macro, meso, micro };
enum class DosNormalization { per_unit_length, raw_count };

/// Density-of-states query. The window is [E - eta/2, E + eta/2] with
/// eta = scale (macro), N^-theta (meso) or K/N (micro, one row per K).
struct DosQuery {
  double E = 0.0;
  ScaleRule rule = ScaleRule::micro;
  std::vector<double> scales;  // eta values (macro) or K values (micro)
  double theta = 0.5;          // meso exponent
  DosNormalization normalization = DosNormalization::per_unit_length;
  std::size_t trials = 1;
};

struct DosPoint {
  double eta = 0.0;          // interval width
  double scale_param = 0.0;  // eta (macro/meso) or K (micro)
  MeanEstimate estimate;     // normalized count
  double mean_raw_count = 0.0;
};

struct DosResult {
  DosQuery query;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::vector<DosPoint> points;
  std::size_t valid_trials = 0;
  std::size_t failed_trials = 0;
  double target = 0.0;  // rho_sc(E)

  StatReport to_report() const;
};

DosResult dos_estimate(const EnsembleSpec& spec, const DosQuery& query,
                       const RunOptions& options = {});

}  // namespace wigner

#endif  // WIGNER_SPECTRAL_HPP
