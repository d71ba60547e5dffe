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

#ifndef WIGNER_INVERSE_MOMENTS_HPP
#define WIGNER_INVERSE_MOMENTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wigner/distributions.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/parallel.hpp"
#include "wigner/report.hpp"
#include "wigner/stats.hpp"

namespace wigner {

enum class FrameRule { standard_basis, random_orthonormal, fourier_rows, explicit_frame };

/// m orthonormal columns in C^dim.
///  - standard_basis: e_1 .. e_m
///  - random_orthonormal: complex Gaussian columns, modified Gram-Schmidt in
///    column order (two passes)
///  - fourier_rows: u_j(l) = exp(2 pi i j l / dim) / sqrt(dim), j = 0..m-1
ComplexMatrix make_frame(FrameRule rule, std::size_t dim, std::size_t m, std::uint64_t seed);

/// E (sum_{j<=m} |b . u_j|^2)^{-r} with Re b_i, Im b_i iid from `law` and
/// b in C^{N-1}.
struct InverseMomentQuery {
  std::size_t m = 3;
  int r = 1;
  std::vector<std::size_t> N_grid;
  FrameRule frame = FrameRule::standard_basis;
  std::optional<ComplexMatrix> explicit_frame;  // used when frame == explicit_frame
  EntryDistribution law = EntryDistribution::make_builtin(LawKind::gaussian, 0.5);
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Gamma(m - r) / Gamma(m) = 1 / ((m-1)(m-2)...(m-r)), the value for
/// standard complex Gaussian b. Throws InvalidArgument unless m > r >= 1.
double gaussian_oracle(std::size_t m, std::size_t r);

/// Throws HypothesisError unless the law has a density with finite fourth
/// score moment and finite fourth moment.
void check_inverse_moment_hypothesis(const EntryDistribution& law);

struct InverseMomentPoint {
  std::size_t N = 0;
  std::uint64_t seed = 0;
  MeanEstimate estimate;
  std::size_t rejected = 0;  // draws with sum |b . u_j|^2 == 0
};

struct InverseMomentResult {
  InverseMomentQuery query;
  std::vector<InverseMomentPoint> points;
  std::optional<double> oracle;  // gaussian laws only, scaled to the variance

  StatReport to_report() const;
};

InverseMomentResult estimate_inverse_moment(const InverseMomentQuery& query,
                                            const RunOptions& options = {});

}  // namespace wigner

#endif  // WIGNER_INVERSE_MOMENTS_HPP
