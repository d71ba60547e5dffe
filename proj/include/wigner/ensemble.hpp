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

#ifndef WIGNER_ENSEMBLE_HPP
#define WIGNER_ENSEMBLE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>

#include <Eigen/Dense>

#include "wigner/distributions.hpp"

namespace wigner {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Hermitian Wigner ensemble: off-diagonal h_jk = (x + i y)/sqrt(N) with
/// x, y iid of variance 1/2, diagonal h_jj = x/sqrt(N) with variance 1.
struct EnsembleSpec {
  std::size_t N = 2;
  EntryDistribution offdiag = EntryDistribution::make_builtin(LawKind::gaussian, 0.5);
  EntryDistribution diag = EntryDistribution::make_builtin(LawKind::gaussian, 1.0);
  std::uint64_t seed = 0;

  static EnsembleSpec gue(std::size_t N, std::uint64_t seed);

  /// Throws InvalidArgument unless N >= 2 and the variances are exactly 1/2
  /// (off-diagonal components) and 1 (diagonal).
  void validate() const;

  EnsembleSpec with_dimension(std::size_t n) const {
    EnsembleSpec s = *this;
    s.N = n;
    return s;
  }
};

struct WignerMatrix {
  ComplexMatrix h;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// Position of one real draw in the fixed draw order: upper triangle in
/// row-major order (component 0 = real, 1 = imaginary), then the diagonal.
/// For row == col the component must be 0.
std::uint64_t entry_draw_index(std::size_t N, std::size_t row, std::size_t col,
                               int component);

/// Deterministic in (spec.seed, trial); every real draw uses its own stream
/// keyed by entry_draw_index, so trials are independent of execution order.
WignerMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t trial);

struct GueLogDensity {
  double value = 0.0;
  bool normalized = false;  // false: log(const) omitted
};

/// log of const * prod_{i<j} (mu_i - mu_j)^2 * exp(-(N/2) sum mu_j^2), the
/// joint density of unordered GUE eigenvalues. The constant is included for
/// N <= 4 and omitted (flagged) above. Coincident eigenvalues give -inf.
GueLogDensity gue_log_joint_density(std::span<const double> eigenvalues);

/// log of the normalizer \int prod (mu_i - mu_j)^2 exp(-(N/2) sum mu^2) d^N mu,
/// by tensor-product Gauss-Hermite quadrature (exact for this integrand).
double gue_log_normalizer(std::size_t N);

/// Gauss-Hermite nodes and weights for weight exp(-x^2) (Golub-Welsch).
void gauss_hermite(std::size_t n, std::vector<double>& nodes,
                   std::vector<double>& weights);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the
/// R-diagonal phases removed).
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

/// Binary layout: 8-byte magic "WGNRMAT1", uint64 N, then N*N (re, im)
/// pairs of float64 in row-major order; all little-endian.
void write_matrix_binary(std::ostream& out, const ComplexMatrix& h);
ComplexMatrix read_matrix_binary(std::istream& in);

}  // namespace wigner

#endif  // WIGNER_ENSEMBLE_HPP
