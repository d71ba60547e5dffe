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

#ifndef WIGNER_QUADRATURE_HPP
#define WIGNER_QUADRATURE_HPP

#include <functional>
#include <span>

namespace wigner {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod over each panel [b_i, b_{i+1}] of a sorted
/// breakpoint list. Panels are refined until the Kronrod error estimate drops
/// below abs_tol (or relative 1e-14 of the panel's L1 mass, whichever is
/// looser).
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints,
                                  double abs_tol = 1e-10);

}  // namespace wigner

#endif  // WIGNER_QUADRATURE_HPP
