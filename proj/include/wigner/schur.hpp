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

#ifndef WIGNER_SCHUR_HPP
#define WIGNER_SCHUR_HPP

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/report.hpp"
#include "wigner/stats.hpp"
#include "wigner/wegner.hpp"

namespace wigner {

/// (N-1)x(N-1) matrix with row and column j removed.
ComplexMatrix minor_matrix(const ComplexMatrix& h, std::size_t j);

/// Column j of h without its diagonal entry, i.e. (h_kj)_{k != j}.
ComplexVector removed_column(const ComplexMatrix& h, std::size_t j);

/// (H - z)^{-1}(j, j) = 1 / (h_jj - z - a^* (B - z)^{-1} a) with B the minor
/// and a the removed column. Requires Im z != 0.
std::complex<double> schur_diagonal(const ComplexMatrix& h, std::size_t j,
                                    std::complex<double> z);

/// (H - z)^{-1}(j, j) from an LU solve of the full system.
std::complex<double> direct_resolvent_diagonal(const ComplexMatrix& h, std::size_t j,
                                               std::complex<double> z);

/// Draw indices (see entry_draw_index) feeding the minor B^(j) and the
/// removed column. The two sets are disjoint by construction.
std::vector<std::uint64_t> minor_draw_indices(std::size_t N, std::size_t j);
std::vector<std::uint64_t> column_draw_indices(std::size_t N, std::size_t j);

/// Spectral form of the Schur complement at z = E + i eps/N.
///
/// With lambda, u the minor's eigenpairs and b = sqrt(N) a:
///   zeta_alpha = |u_alpha^* b|^2
///   c_alpha    = eps / (N^2 (lambda_alpha - E)^2 + eps^2)
///   d_alpha    = N (lambda_alpha - E) / (N^2 (lambda_alpha - E)^2 + eps^2)
/// so the denominator is (h_jj - E - sum d zeta) - i (eps/N + sum c zeta).
struct SchurDecomposition {
  std::size_t j = 0;
  std::size_t N = 0;
  double h_jj = 0.0;
  std::vector<double> minor_eigenvalues;
  std::vector<double> overlaps;  // empty when computed without eigenvectors
  std::vector<double> c;
  std::vector<double> d;
  double E = 0.0;
  double epsilon = 0.0;
  double b_norm_sq = 0.0;

  /// h_jj - E - i eps/N - (1/N) sum zeta / (lambda - E - i eps/N).
  std::complex<double> spectral_denominator() const;
  std::complex<double> resolvent() const { return 1.0 / spectral_denominator(); }
  /// eps/N + sum c zeta; strictly positive.
  double imaginary_weight() const;
  double real_part() const;  // h_jj - E - sum d zeta
  /// real_part^2 + imaginary_weight^2.
  double decomposed_denominator_abs_sq() const;
};

/// Throws InvalidArgument for eps <= 0; EigensolverFailure if the minor's
/// eigendecomposition fails. with_overlaps = false skips eigenvectors.
SchurDecomposition decompose(const ComplexMatrix& h, std::size_t j, double E,
                             double epsilon, bool with_overlaps = true);

/// Omega: at least six minor eigenvalues outside [E - eps/2N, E + eps/2N].
/// On Omega, alphas are the six eigenvalues nearest to E among those with
/// N |lambda - E| >= eps (ties to the smaller index) and delta is the sixth
/// distance N |lambda - E|. Off Omega, betas are the three eigenvalues
/// nearest to E inside the interval.
struct OmegaClassification {
  bool omega = false;
  std::size_t outside_count = 0;
  std::vector<std::size_t> alphas;
  std::vector<std::size_t> betas;
  bool selection_complete = false;  // six alphas (Omega) or three betas found
  double delta = std::numeric_limits<double>::quiet_NaN();
};

/// Requires N - 1 >= 8 minor eigenvalues.
OmegaClassification classify_omega(const SchurDecomposition& dec);

/// |d_a4| >= |d_a5| >= |d_a6| >= 1/(2 delta) and c_a1 >= c_a2 >= c_a3 >=
/// eps/(2 delta^2) on Omega; c_beta > 1/(2 eps) off Omega.
bool omega_bounds_hold(const SchurDecomposition& dec, const OmegaClassification& cls);

struct DeltaTailPoint {
  std::size_t N = 0;
  std::size_t valid_trials = 0;
  std::size_t failed_trials = 0;
  std::size_t omega_count = 0;
  std::size_t incomplete_selection = 0;
  double omega_frequency = 0.0;
  MeanEstimate omega_delta_cubed;  // mean of 1_Omega Delta^3 over valid trials
  std::vector<double> deltas;      // Delta on Omega, trial order
  std::vector<GapPoint> survival;  // P(Delta >= K | Omega)
};

struct DeltaTailResult {
  double E = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t requested_trials = 0;
  std::vector<double> K_grid;
  std::vector<DeltaTailPoint> points;  // one per N

  StatReport to_report() const;
};

/// Distribution of Delta (from classify_omega on the minor B^(1)) across a
/// grid of dimensions; spec.N is replaced by each grid value.
DeltaTailResult delta_tail(const EnsembleSpec& spec, double E, double epsilon,
                           const std::vector<double>& K_grid,
                           const std::vector<std::size_t>& N_grid, std::size_t trials,
                           const RunOptions& options = {});

/// Per-trial residuals of the Schur route against direct inversion and of
/// the real/imaginary decomposition, maximised over all diagonal indices.
struct SchurCheckRow {
  std::size_t trial = 0;
  double E = 0.0;
  double epsilon = 0.0;
  double schur_vs_direct = 0.0;     // |schur - direct| / |direct|
  double spectral_vs_schur = 0.0;   // |1/spectral_denominator - schur| / |schur|
  double decomposition = 0.0;       // relative error of |denominator|^2 split
};

struct SchurCheckResult {
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::size_t requested_trials = 0;
  std::vector<SchurCheckRow> rows;
  std::size_t failed_trials = 0;
  double max_schur_vs_direct = 0.0;
  double max_spectral_vs_schur = 0.0;
  double max_decomposition = 0.0;

  StatReport to_report() const;
};

SchurCheckResult schur_check(const EnsembleSpec& spec, const std::vector<double>& energies,
                             const std::vector<double>& epsilons, std::size_t trials,
                             const RunOptions& options = {});

}  // namespace wigner

#endif  // WIGNER_SCHUR_HPP
