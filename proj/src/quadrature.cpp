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

#include "wigner/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace wigner {

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints,
                                  double abs_tol) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate_panels: need at least two breakpoints");
  }
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    // A coarse pass fixes the panel's scale; the refined pass converts the
    // absolute tolerance into the relative one Boost expects.
    double l1 = 0.0;
    Rule::integrate(f, a, b, 0, 0.0, nullptr, &l1);
    const double rel = std::max(abs_tol / std::max(l1, abs_tol), 1e-14);
    double err = 0.0;
    total.value += Rule::integrate(f, a, b, 25, rel, &err);
    total.error_estimate += err;
  }
  return total;
}

}  // namespace wigner
