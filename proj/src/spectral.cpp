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

#include "wigner/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigner/errors.hpp"
#include "wigner/stats.hpp"

namespace wigner {

SpectralSample eigen_decompose(const ComplexMatrix& h, bool want_vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigensolverFailure("Hermitian eigensolver did not converge");
  }
  SpectralSample s;
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  // Eigen returns ascending order; keep the invariant explicit
  if (!std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end())) {
    throw EigensolverFailure("eigensolver returned unsorted eigenvalues");
  }
  if (want_vectors) s.eigenvectors = solver.eigenvectors();
  return s;
}

SpectralSample eigen_decompose(const WignerMatrix& h, bool want_vectors) {
  SpectralSample s = eigen_decompose(h.h, want_vectors);
  s.seed = h.seed;
  s.trial = h.trial;
  return s;
}

std::size_t counting(std::span<const double> sorted, double a, double b) {
  if (a > b) throw InvalidArgument("counting: need a <= b");
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), a);
  const auto hi = std::upper_bound(lo, sorted.end(), b);
  return static_cast<std::size_t>(hi - lo);
}

double semicircle_density(double E) {
  if (std::abs(E) > 2.0) return 0.0;
  return std::sqrt(4.0 - E * E) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double E) {
  if (E <= -2.0) return 0.0;
  if (E >= 2.0) return 1.0;
  const double v = (E * std::sqrt(4.0 - E * E) / 4.0 + std::asin(E / 2.0)) / std::numbers::pi + 0.5;
  return std::clamp(v, 0.0, 1.0);
}

namespace {

std::string_view rule_name(ScaleRule r) {
  switch (r) {
    case ScaleRule::macro: return "macro";
    case ScaleRule::meso: return "meso";
    case ScaleRule::micro: return "micro";
  }
  return "?";
}

}  // namespace

DosResult dos_estimate(const EnsembleSpec& spec, const DosQuery& query,
                       const RunOptions& options) {
  spec.validate();
  if (!(std::abs(query.E) < 2.0)) throw InvalidArgument("dos_estimate: need |E| < 2");
  if (query.trials < 1) throw InvalidArgument("dos_estimate: need at least one trial");

  const double n = static_cast<double>(spec.N);
  DosResult result;
  result.query = query;
  result.N = spec.N;
  result.seed = spec.seed;
  result.target = semicircle_density(query.E);

  // (eta, parameter reported in the K_or_eta column)
  std::vector<std::pair<double, double>> windows;
  switch (query.rule) {
    case ScaleRule::macro:
      if (query.scales.empty()) throw InvalidArgument("dos_estimate: macro needs eta values");
      for (double eta : query.scales) {
        if (!(eta > 0.0)) throw InvalidArgument("dos_estimate: eta must be positive");
        windows.emplace_back(eta, eta);
      }
      break;
    case ScaleRule::meso: {
      if (!(query.theta > 0.0 && query.theta < 1.0)) {
        throw InvalidArgument("dos_estimate: meso theta must lie in (0, 1)");
      }
      const double eta = std::pow(n, -query.theta);
      windows.emplace_back(eta, eta);
      break;
    }
    case ScaleRule::micro:
      if (query.scales.empty()) throw InvalidArgument("dos_estimate: micro needs K values");
      for (double k : query.scales) {
        if (!(k > 0.0)) throw InvalidArgument("dos_estimate: K must be positive");
        windows.emplace_back(k / n, k);
      }
      break;
  }

  auto counts = run_trials(query.trials, options.jobs, [&](std::size_t trial) {
    const auto sample = eigen_decompose(sample_matrix(spec, trial), false);
    std::vector<double> c(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const double half = windows[i].first / 2.0;
      c[i] = static_cast<double>(counting(sample, query.E - half, query.E + half));
    }
    return c;
  });

  std::vector<std::vector<double>> per_window(windows.size());
  for (const auto& c : counts) {
    if (!c) {
      ++result.failed_trials;
      continue;
    }
    ++result.valid_trials;
    for (std::size_t i = 0; i < windows.size(); ++i) per_window[i].push_back((*c)[i]);
  }
  if (result.valid_trials == 0) throw EmptySample("dos_estimate: every trial failed");

  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto [eta, param] = windows[i];
    const double divisor = query.normalization == DosNormalization::raw_count ? 1.0 : n * eta;
    DosPoint p;
    p.eta = eta;
    p.scale_param = param;
    p.mean_raw_count = mean_with_stderr(per_window[i]).mean;
    std::vector<double> normalized(per_window[i]);
    for (double& v : normalized) v /= divisor;
    p.estimate = mean_with_stderr(normalized);
    result.points.push_back(p);
  }
  return result;
}

StatReport DosResult::to_report() const {
  StatReport r;
  r.statistic = "dos";
  r.requested_trials = query.trials;
  r.failed_trials = failed_trials;
  for (const auto& p : points) {
    ReportRow row;
    row.statistic = query.normalization == DosNormalization::raw_count ? "dos_raw_count" : "dos";
    row.E = query.E;
    row.scale = std::string(rule_name(query.rule));
    row.N = N;
    row.K_or_eta = p.scale_param;
    row.estimate = p.estimate.mean;
    row.stderr_ = p.estimate.stderr_;
    row.trials = valid_trials;
    row.seed = seed;
    row.extras = {{"eta", p.eta}, {"mean_count", p.mean_raw_count}, {"target", target}};
    r.rows.push_back(std::move(row));
  }
  r.summary["target_rho_sc"] = target;
  return r;
}

}  // namespace wigner
