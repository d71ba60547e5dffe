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

#include "wigner/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wigner/errors.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

ComplexMatrix minor_matrix(const ComplexMatrix& h, std::size_t j) {
  const Eigen::Index n = h.rows();
  const auto jj = static_cast<Eigen::Index>(j);
  ComplexMatrix b(n - 1, n - 1);
  for (Eigen::Index r = 0, br = 0; r < n; ++r) {
    if (r == jj) continue;
    for (Eigen::Index c = 0, bc = 0; c < n; ++c) {
      if (c == jj) continue;
      b(br, bc++) = h(r, c);
    }
    ++br;
  }
  return b;
}

ComplexVector removed_column(const ComplexMatrix& h, std::size_t j) {
  const Eigen::Index n = h.rows();
  const auto jj = static_cast<Eigen::Index>(j);
  ComplexVector a(n - 1);
  for (Eigen::Index r = 0, k = 0; r < n; ++r) {
    if (r != jj) a(k++) = h(r, jj);
  }
  return a;
}

namespace {

void check_index(const ComplexMatrix& h, std::size_t j) {
  if (h.rows() != h.cols() || h.rows() < 2) {
    throw InvalidArgument("Schur complement needs a square matrix of size >= 2");
  }
  if (j >= static_cast<std::size_t>(h.rows())) {
    throw InvalidArgument("Schur complement index out of range");
  }
}

}  // namespace

std::complex<double> schur_diagonal(const ComplexMatrix& h, std::size_t j,
                                    std::complex<double> z) {
  check_index(h, j);
  if (z.imag() == 0.0) throw InvalidArgument("schur_diagonal: need Im z != 0");
  ComplexMatrix shifted = minor_matrix(h, j);
  shifted.diagonal().array() -= z;
  const ComplexVector a = removed_column(h, j);
  const ComplexVector x = shifted.partialPivLu().solve(a);
  const std::complex<double> quad = a.dot(x);  // a^* (B - z)^{-1} a
  return 1.0 / (h(j, j) - z - quad);
}

std::complex<double> direct_resolvent_diagonal(const ComplexMatrix& h, std::size_t j,
                                               std::complex<double> z) {
  check_index(h, j);
  ComplexMatrix shifted = h;
  shifted.diagonal().array() -= z;
  ComplexVector e = ComplexVector::Zero(h.rows());
  e(static_cast<Eigen::Index>(j)) = 1.0;
  return shifted.partialPivLu().solve(e)(static_cast<Eigen::Index>(j));
}

std::vector<std::uint64_t> minor_draw_indices(std::size_t N, std::size_t j) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < N; ++r) {
    if (r == j) continue;
    out.push_back(entry_draw_index(N, r, r, 0));
    for (std::size_t c = r + 1; c < N; ++c) {
      if (c == j) continue;
      out.push_back(entry_draw_index(N, r, c, 0));
      out.push_back(entry_draw_index(N, r, c, 1));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> column_draw_indices(std::size_t N, std::size_t j) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < N; ++r) {
    if (r == j) continue;
    out.push_back(entry_draw_index(N, r, j, 0));
    out.push_back(entry_draw_index(N, r, j, 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::complex<double> SchurDecomposition::spectral_denominator() const {
  if (overlaps.size() != minor_eigenvalues.size()) {
    throw InvalidArgument("spectral_denominator needs overlaps (decompose with_overlaps)");
  }
  const double n = static_cast<double>(N);
  const std::complex<double> z(E, epsilon / n);
  std::complex<double> sum = 0.0;
  for (std::size_t a = 0; a < overlaps.size(); ++a) {
    sum += overlaps[a] / (minor_eigenvalues[a] - z);
  }
  return h_jj - z - sum / n;
}

double SchurDecomposition::imaginary_weight() const {
  double s = epsilon / static_cast<double>(N);
  for (std::size_t a = 0; a < overlaps.size(); ++a) s += c[a] * overlaps[a];
  return s;
}

double SchurDecomposition::real_part() const {
  double s = h_jj - E;
  for (std::size_t a = 0; a < overlaps.size(); ++a) s -= d[a] * overlaps[a];
  return s;
}

double SchurDecomposition::decomposed_denominator_abs_sq() const {
  const double re = real_part();
  const double im = imaginary_weight();
  return re * re + im * im;
}

SchurDecomposition decompose(const ComplexMatrix& h, std::size_t j, double E,
                             double epsilon, bool with_overlaps) {
  check_index(h, j);
  if (!(epsilon > 0.0)) throw InvalidArgument("decompose: epsilon must be positive");
  SchurDecomposition dec;
  dec.j = j;
  dec.N = static_cast<std::size_t>(h.rows());
  dec.h_jj = h(j, j).real();
  dec.E = E;
  dec.epsilon = epsilon;

  const double n = static_cast<double>(dec.N);
  const SpectralSample minor = eigen_decompose(minor_matrix(h, j), with_overlaps);
  dec.minor_eigenvalues = minor.eigenvalues;

  const ComplexVector b = std::sqrt(n) * removed_column(h, j);
  dec.b_norm_sq = b.squaredNorm();
  if (with_overlaps) {
    const ComplexVector proj = minor.eigenvectors->adjoint() * b;
    dec.overlaps.resize(proj.size());
    for (Eigen::Index a = 0; a < proj.size(); ++a) dec.overlaps[a] = std::norm(proj(a));
  }

  const std::size_t m = dec.minor_eigenvalues.size();
  dec.c.resize(m);
  dec.d.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    const double x = n * (dec.minor_eigenvalues[a] - E);
    const double denom = x * x + epsilon * epsilon;
    dec.c[a] = epsilon / denom;
    dec.d[a] = x / denom;
  }
  return dec;
}

OmegaClassification classify_omega(const SchurDecomposition& dec) {
  const std::size_t m = dec.minor_eigenvalues.size();
  if (m < 8) {
    throw InvalidArgument("classify_omega: need N - 1 >= 8 minor eigenvalues");
  }
  const double n = static_cast<double>(dec.N);
  const double eps = dec.epsilon;
  std::vector<double> dist(m);
  for (std::size_t a = 0; a < m; ++a) dist[a] = n * std::abs(dec.minor_eigenvalues[a] - dec.E);

  // nearest-first with ties to the smaller index
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  OmegaClassification cls;
  cls.outside_count = static_cast<std::size_t>(
      std::count_if(dist.begin(), dist.end(), [&](double x) { return x > eps / 2.0; }));
  cls.omega = cls.outside_count >= 6;
  if (cls.omega) {
    for (std::size_t a : order) {
      if (dist[a] >= eps && cls.alphas.size() < 6) cls.alphas.push_back(a);
    }
    cls.selection_complete = cls.alphas.size() == 6;
    if (cls.selection_complete) cls.delta = dist[cls.alphas.back()];
  } else {
    for (std::size_t a : order) {
      if (dist[a] <= eps / 2.0 && cls.betas.size() < 3) cls.betas.push_back(a);
    }
    cls.selection_complete = cls.betas.size() == 3;
  }
  return cls;
}

bool omega_bounds_hold(const SchurDecomposition& dec, const OmegaClassification& cls) {
  if (!cls.selection_complete) return false;
  const double eps = dec.epsilon;
  if (cls.omega) {
    const auto& a = cls.alphas;
    const double delta = cls.delta;
    const auto absd = [&](std::size_t i) { return std::abs(dec.d[a[i]]); };
    const auto c = [&](std::size_t i) { return dec.c[a[i]]; };
    return absd(3) >= absd(4) && absd(4) >= absd(5) && absd(5) >= 1.0 / (2.0 * delta) &&
           c(0) >= c(1) && c(1) >= c(2) && c(2) >= eps / (2.0 * delta * delta);
  }
  return std::all_of(cls.betas.begin(), cls.betas.end(),
                     [&](std::size_t b) { return dec.c[b] > 1.0 / (2.0 * eps); });
}

DeltaTailResult delta_tail(const EnsembleSpec& spec, double E, double epsilon,
                           const std::vector<double>& K_grid,
                           const std::vector<std::size_t>& N_grid, std::size_t trials,
                           const RunOptions& options) {
  if (!(std::abs(E) < 2.0)) throw InvalidArgument("delta_tail: need |E| < 2");
  if (!(epsilon > 0.0)) throw InvalidArgument("delta_tail: epsilon must be positive");
  if (trials == 0) throw InvalidArgument("delta_tail: need at least one trial");
  if (N_grid.empty()) throw InvalidArgument("delta_tail: empty N grid");
  for (std::size_t i = 0; i < K_grid.size(); ++i) {
    if (!(K_grid[i] > 0.0) || (i > 0 && !(K_grid[i] > K_grid[i - 1]))) {
      throw InvalidArgument("delta_tail: K grid must be positive and strictly increasing");
    }
  }

  DeltaTailResult result;
  result.E = E;
  result.epsilon = epsilon;
  result.seed = spec.seed;
  result.requested_trials = trials;
  result.K_grid = K_grid;

  struct TrialOutcome {
    bool omega;
    bool complete;
    double delta;
  };
  for (std::size_t N : N_grid) {
    if (N < 9) throw InvalidArgument("delta_tail: every N must be at least 9");
    EnsembleSpec s = spec.with_dimension(N);
    s.seed = derive_seed(spec.seed, N);
    s.validate();
    auto outcomes = run_trials(trials, options.jobs, [&](std::size_t trial) {
      const auto h = sample_matrix(s, trial);
      const auto dec = decompose(h.h, 0, E, epsilon, false);
      const auto cls = classify_omega(dec);
      return TrialOutcome{cls.omega, cls.selection_complete, cls.delta};
    });

    DeltaTailPoint p;
    p.N = N;
    std::vector<double> cubes;
    for (const auto& o : outcomes) {
      if (!o) {
        ++p.failed_trials;
        continue;
      }
      ++p.valid_trials;
      double cube = 0.0;
      if (o->omega) {
        ++p.omega_count;
        if (o->complete) {
          p.deltas.push_back(o->delta);
          cube = o->delta * o->delta * o->delta;
        } else {
          ++p.incomplete_selection;
        }
      }
      cubes.push_back(cube);
    }
    if (p.valid_trials == 0) throw EmptySample("delta_tail: every trial failed");
    p.omega_frequency = static_cast<double>(p.omega_count) / static_cast<double>(p.valid_trials);
    p.omega_delta_cubed = mean_with_stderr(cubes);
    p.survival = survival_points(p.deltas, K_grid);
    result.points.push_back(std::move(p));
  }
  return result;
}

StatReport DeltaTailResult::to_report() const {
  StatReport r;
  r.statistic = "delta_tail";
  r.requested_trials = requested_trials;
  for (const auto& p : points) {
    r.failed_trials += p.failed_trials;
    ReportRow moment;
    moment.statistic = "omega_delta_cubed";
    moment.E = E;
    moment.scale = "epsilon";
    moment.N = p.N;
    moment.K_or_eta = epsilon;
    moment.estimate = p.omega_delta_cubed.mean;
    moment.stderr_ = p.omega_delta_cubed.stderr_;
    moment.trials = p.valid_trials;
    moment.seed = derive_seed(seed, p.N);
    moment.extras = {{"omega_frequency", p.omega_frequency},
                     {"exceedances", std::nan("")}};
    r.rows.push_back(moment);
    const double m = static_cast<double>(p.deltas.size());
    for (const auto& g : p.survival) {
      ReportRow row = moment;
      row.statistic = "delta_survival";
      row.scale = "K";
      row.K_or_eta = g.K;
      row.estimate = g.survival;
      row.stderr_ = m > 0 ? std::sqrt(g.survival * (1.0 - g.survival) / m) : 0.0;
      row.trials = p.deltas.size();
      row.extras = {{"omega_frequency", p.omega_frequency},
                    {"exceedances", static_cast<double>(g.exceedances)}};
      r.rows.push_back(std::move(row));
    }
  }
  r.summary["epsilon"] = epsilon;
  return r;
}

SchurCheckResult schur_check(const EnsembleSpec& spec, const std::vector<double>& energies,
                             const std::vector<double>& epsilons, std::size_t trials,
                             const RunOptions& options) {
  spec.validate();
  if (trials == 0) throw InvalidArgument("schur_check: need at least one trial");
  if (energies.empty() || epsilons.empty()) {
    throw InvalidArgument("schur_check: need at least one energy and one epsilon");
  }
  const double n = static_cast<double>(spec.N);
  auto per_trial = run_trials(trials, options.jobs, [&](std::size_t trial) {
    const auto h = sample_matrix(spec, trial);
    std::vector<SchurCheckRow> rows;
    for (double E : energies) {
      for (double eps : epsilons) {
        SchurCheckRow row;
        row.trial = trial;
        row.E = E;
        row.epsilon = eps;
        const std::complex<double> z(E, eps / n);
        for (std::size_t j = 0; j < spec.N; ++j) {
          const auto schur = schur_diagonal(h.h, j, z);
          const auto direct = direct_resolvent_diagonal(h.h, j, z);
          const auto dec = decompose(h.h, j, E, eps);
          const auto denom = dec.spectral_denominator();
          const double abs_sq = std::norm(denom);
          row.schur_vs_direct = std::max(row.schur_vs_direct, std::abs(schur - direct) / std::abs(direct));
          row.spectral_vs_schur =
              std::max(row.spectral_vs_schur, std::abs(1.0 / denom - schur) / std::abs(schur));
          row.decomposition = std::max(
              row.decomposition, std::abs(dec.decomposed_denominator_abs_sq() - abs_sq) / abs_sq);
        }
        rows.push_back(row);
      }
    }
    return rows;
  });

  SchurCheckResult result;
  result.N = spec.N;
  result.seed = spec.seed;
  result.requested_trials = trials;
  for (auto& t : per_trial) {
    if (!t) {
      ++result.failed_trials;
      continue;
    }
    for (const auto& row : *t) {
      result.max_schur_vs_direct = std::max(result.max_schur_vs_direct, row.schur_vs_direct);
      result.max_spectral_vs_schur = std::max(result.max_spectral_vs_schur, row.spectral_vs_schur);
      result.max_decomposition = std::max(result.max_decomposition, row.decomposition);
      result.rows.push_back(row);
    }
  }
  return result;
}

StatReport SchurCheckResult::to_report() const {
  StatReport r;
  r.statistic = "schur_check";
  r.failed_trials = failed_trials;
  for (const auto& row : rows) {
    ReportRow out;
    out.statistic = "schur_residual";
    out.E = row.E;
    out.scale = "epsilon";
    out.N = N;
    out.K_or_eta = row.epsilon;
    out.estimate = row.schur_vs_direct;
    out.stderr_ = 0.0;
    out.trials = 1;
    out.seed = seed;
    out.extras = {{"trial", static_cast<double>(row.trial)},
                  {"spectral_vs_schur", row.spectral_vs_schur},
                  {"decomposition", row.decomposition}};
    r.rows.push_back(std::move(out));
  }
  r.requested_trials = requested_trials;
  r.summary["max_schur_vs_direct"] = max_schur_vs_direct;
  r.summary["max_spectral_vs_schur"] = max_spectral_vs_schur;
  r.summary["max_decomposition"] = max_decomposition;
  return r;
}

}  // namespace wigner
