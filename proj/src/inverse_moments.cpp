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

#include "wigner/inverse_moments.hpp"

#include <cmath>
#include <numbers>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

constexpr std::size_t kBatch = 1024;

void orthonormalize_columns(ComplexMatrix& u) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const std::complex<double> proj = u.col(k).dot(u.col(j));
        u.col(j) -= proj * u.col(k);
      }
      u.col(j).normalize();
    }
  }
}

double orthonormality_defect(const ComplexMatrix& u) {
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix make_frame(FrameRule rule, std::size_t dim, std::size_t m, std::uint64_t seed) {
  if (m == 0 || m > dim) throw InvalidArgument("make_frame: need 1 <= m <= dim");
  ComplexMatrix u = ComplexMatrix::Zero(dim, m);
  switch (rule) {
    case FrameRule::standard_basis:
      for (std::size_t j = 0; j < m; ++j) u(j, j) = 1.0;
      break;
    case FrameRule::random_orthonormal:
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t l = 0; l < dim; ++l) {
          DrawStream stream(seed, StreamDomain::frame, j, l);
          const double re = stream.next_normal();
          const double im = stream.next_normal();
          u(l, j) = {re, im};
        }
      }
      orthonormalize_columns(u);
      break;
    case FrameRule::fourier_rows: {
      const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t l = 0; l < dim; ++l) {
          // reduce j*l mod dim first so the phase stays accurate
          const double phase = 2.0 * std::numbers::pi *
                               static_cast<double>((j * l) % dim) / static_cast<double>(dim);
          u(l, j) = std::polar(norm, phase);
        }
      }
      break;
    }
    case FrameRule::explicit_frame:
      throw InvalidArgument("make_frame: explicit frames are supplied by the caller");
  }
  return u;
}

double gaussian_oracle(std::size_t m, std::size_t r) {
  if (r < 1 || m <= r) throw InvalidArgument("gaussian_oracle: need m > r >= 1");
  double denom = 1.0;
  for (std::size_t k = 1; k <= r; ++k) denom *= static_cast<double>(m - k);
  return 1.0 / denom;
}

void check_inverse_moment_hypothesis(const EntryDistribution& law) {
  if (!law.has_density()) {
    throw HypothesisError("entry law has no density; inverse-moment hypothesis (finite fourth score moment) fails for " +
                          law.to_string());
  }
  const auto si = score_integral(law, 4);
  if (si.diverges) {
    throw HypothesisError("entry law " + law.to_string() +
                          " has an infinite fourth score moment; inverse-moment hypothesis fails");
  }
  if (!std::isfinite(law.fourth_moment())) {
    throw HypothesisError("entry law " + law.to_string() + " has an infinite fourth moment");
  }
}

InverseMomentResult estimate_inverse_moment(const InverseMomentQuery& query,
                                            const RunOptions& options) {
  if (query.r != 1 && query.r != 2) throw InvalidArgument("invmom: r must be 1 or 2");
  if (query.m <= static_cast<std::size_t>(query.r)) throw InvalidArgument("invmom: need m > r");
  if (query.samples == 0) throw InvalidArgument("invmom: need at least one sample");
  if (query.N_grid.empty()) throw InvalidArgument("invmom: empty N grid");
  check_inverse_moment_hypothesis(query.law);

  InverseMomentResult result;
  result.query = query;
  if (query.law.kind() == LawKind::gaussian) {
    // |u . b|^2 is exponential with mean 2 * variance
    result.oracle = gaussian_oracle(query.m, static_cast<std::size_t>(query.r)) *
                    std::pow(2.0 * query.law.variance(), -query.r);
  }

  for (std::size_t N : query.N_grid) {
    if (N < 2) throw InvalidArgument("invmom: every N must be at least 2");
    const std::size_t dim = N - 1;
    if (query.m > dim) throw InvalidArgument("invmom: need m <= N - 1");
    const std::uint64_t seed = derive_seed(query.seed, N);

    ComplexMatrix frame;
    if (query.frame == FrameRule::explicit_frame) {
      if (!query.explicit_frame) throw InvalidArgument("invmom: explicit frame missing");
      frame = *query.explicit_frame;
      if (static_cast<std::size_t>(frame.rows()) != dim ||
          static_cast<std::size_t>(frame.cols()) != query.m) {
        throw InvalidArgument("invmom: explicit frame must be (N-1) x m");
      }
    } else {
      frame = make_frame(query.frame, dim, query.m, seed);
    }
    if (orthonormality_defect(frame) > 1e-12) {
      throw InvalidArgument("invmom: frame is not orthonormal within 1e-12");
    }

    // Only coordinates touched by the frame matter; each coordinate has its
    // own stream, so skipping the rest does not change the drawn values.
    std::vector<Eigen::Index> active;
    for (Eigen::Index l = 0; l < frame.rows(); ++l) {
      if (frame.row(l).cwiseAbs().maxCoeff() > 0.0) active.push_back(l);
    }
    ComplexMatrix frame_active(active.size(), frame.cols());
    for (std::size_t i = 0; i < active.size(); ++i) frame_active.row(i) = frame.row(active[i]);
    const ComplexMatrix frame_adj = frame_active.adjoint();

    const std::size_t batches = (query.samples + kBatch - 1) / kBatch;
    auto per_batch = run_trials(batches, options.jobs, [&](std::size_t batch) {
      const std::size_t begin = batch * kBatch;
      const std::size_t end = std::min(query.samples, begin + kBatch);
      std::vector<double> values;
      values.reserve(end - begin);
      ComplexVector b(active.size());
      for (std::size_t t = begin; t < end; ++t) {
        for (std::size_t i = 0; i < active.size(); ++i) {
          const auto l = static_cast<std::uint64_t>(active[i]);
          DrawStream re_stream(seed, StreamDomain::inverse_moment, t, 2 * l);
          DrawStream im_stream(seed, StreamDomain::inverse_moment, t, 2 * l + 1);
          const double re = query.law.draw(re_stream);
          const double im = query.law.draw(im_stream);
          b(i) = {re, im};
        }
        const double total = (frame_adj * b).squaredNorm();
        values.push_back(total > 0.0 ? std::pow(total, -query.r)
                                     : std::numeric_limits<double>::quiet_NaN());
      }
      return values;
    });

    InverseMomentPoint point;
    point.N = N;
    point.seed = seed;
    std::vector<double> accepted;
    accepted.reserve(query.samples);
    for (const auto& batch : per_batch) {
      for (double v : *batch) {
        if (std::isnan(v)) ++point.rejected;
        else accepted.push_back(v);
      }
    }
    if (accepted.empty()) throw EmptySample("invmom: every draw was degenerate");
    point.estimate = mean_with_stderr(accepted);
    result.points.push_back(point);
  }
  return result;
}

StatReport InverseMomentResult::to_report() const {
  StatReport rep;
  rep.statistic = "inverse_moment";
  rep.requested_trials = query.samples;
  for (const auto& p : points) {
    ReportRow row;
    row.statistic = "inverse_moment";
    row.E = std::nan("");
    row.scale = "m=" + std::to_string(query.m) + ";r=" + std::to_string(query.r);
    row.N = p.N;
    row.K_or_eta = static_cast<double>(query.m);
    row.estimate = p.estimate.mean;
    row.stderr_ = p.estimate.stderr_;
    row.trials = p.estimate.count;
    row.seed = p.seed;
    row.extras = {{"r", static_cast<double>(query.r)},
                  {"rejected", static_cast<double>(p.rejected)},
                  {"gaussian_oracle", oracle ? *oracle : std::nan("")}};
    rep.rows.push_back(std::move(row));
  }
  rep.summary["law"] = query.law.to_string();
  rep.summary["m"] = query.m;
  rep.summary["r"] = query.r;
  if (oracle) rep.summary["gaussian_oracle"] = *oracle;
  return rep;
}

}  // namespace wigner
