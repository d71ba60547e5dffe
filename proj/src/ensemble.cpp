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

#include "wigner/ensemble.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "wigner/errors.hpp"

namespace wigner {

EnsembleSpec EnsembleSpec::gue(std::size_t N, std::uint64_t seed) {
  EnsembleSpec s;
  s.N = N;
  s.seed = seed;
  return s;
}

void EnsembleSpec::validate() const {
  if (N < 2) throw InvalidArgument("ensemble dimension N must be at least 2");
  if (N > 65535) throw InvalidArgument("ensemble dimension N must be at most 65535");
  if (offdiag.variance() != 0.5) {
    throw InvalidArgument("off-diagonal component law must satisfy E x_jk^2 = 1/2, got variance " +
                          offdiag.to_string());
  }
  if (diag.variance() != 1.0) {
    throw InvalidArgument("diagonal law must satisfy E x_jj^2 = 1, got variance " +
                          diag.to_string());
  }
}

std::uint64_t entry_draw_index(std::size_t N, std::size_t row, std::size_t col,
                               int component) {
  const std::uint64_t n = N;
  if (row == col) return n * (n - 1) + row;
  if (row > col) std::swap(row, col);
  const std::uint64_t j = row;
  const std::uint64_t pair = j * n - j * (j + 1) / 2 + (col - row - 1);
  return 2 * pair + static_cast<std::uint64_t>(component);
}

WignerMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t trial) {
  const std::size_t N = spec.N;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));
  WignerMatrix m;
  m.seed = spec.seed;
  m.trial = trial;
  m.h.resize(N, N);

  const auto draw = [&](const EntryDistribution& law, std::uint64_t index) {
    DrawStream stream(spec.seed, StreamDomain::ensemble, trial, index);
    return law.draw(stream);
  };

  std::uint64_t index = 0;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = j + 1; k < N; ++k) {
      const double x = draw(spec.offdiag, index++);
      const double y = draw(spec.offdiag, index++);
      const std::complex<double> z(x * inv_sqrt_n, y * inv_sqrt_n);
      m.h(j, k) = z;
      m.h(k, j) = std::conj(z);
    }
  }
  for (std::size_t j = 0; j < N; ++j) {
    m.h(j, j) = draw(spec.diag, index++) * inv_sqrt_n;
  }
  return m;
}

void gauss_hermite(std::size_t n, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  nodes.resize(n);
  weights.resize(n);
  const double mass = std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mass * v0 * v0;
  }
}

double gue_log_normalizer(std::size_t N) {
  if (N < 1 || N > 6) throw InvalidArgument("gue_log_normalizer: N must be in [1, 6]");
  // mu = x sqrt(2/N) turns the weight into exp(-sum x^2); the Vandermonde
  // square has degree 2(N-1) per variable, so N+1 nodes integrate exactly.
  std::vector<double> x, w;
  gauss_hermite(N + 1, x, w);
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(N, 0);
  double total = 0.0;
  while (true) {
    double weight = 1.0, vandermonde = 1.0;
    for (std::size_t a = 0; a < N; ++a) {
      weight *= w[idx[a]];
      for (std::size_t b = a + 1; b < N; ++b) {
        const double d = x[idx[a]] - x[idx[b]];
        vandermonde *= d * d;
      }
    }
    total += weight * vandermonde;
    std::size_t pos = 0;
    while (pos < N && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == N) break;
  }
  const double nn = static_cast<double>(N);
  return std::log(total) + 0.5 * nn * nn * std::log(2.0 / nn);
}

GueLogDensity gue_log_joint_density(std::span<const double> mu) {
  const std::size_t N = mu.size();
  if (N < 2) throw InvalidArgument("gue_log_joint_density: need at least two eigenvalues");
  double log_vandermonde = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = std::abs(mu[i] - mu[j]);
      if (d == 0.0) {
        return {-std::numeric_limits<double>::infinity(), N <= 4};
      }
      log_vandermonde += 2.0 * std::log(d);
    }
  }
  double sq = 0.0;
  for (double m : mu) sq += m * m;
  GueLogDensity out;
  out.value = log_vandermonde - 0.5 * static_cast<double>(N) * sq;
  if (N <= 4) {
    out.value -= gue_log_normalizer(N);
    out.normalized = true;
  }
  return out;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      DrawStream stream(seed, StreamDomain::unitary, 0, i * n + j);
      const double re = stream.next_normal();
      const double im = stream.next_normal();
      g(i, j) = {re, im};
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace {

constexpr std::array<char, 8> kMagic{'W', 'G', 'N', 'R', 'M', 'A', 'T', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw InvalidArgument("matrix file truncated");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

void put_f64(std::ostream& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  put_u64(out, bits);
}

double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double d;
  std::memcpy(&d, &bits, sizeof d);
  return d;
}

}  // namespace

void write_matrix_binary(std::ostream& out, const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("write_matrix_binary: matrix must be square");
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, static_cast<std::uint64_t>(h.rows()));
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      put_f64(out, h(i, j).real());
      put_f64(out, h(i, j).imag());
    }
  }
  if (!out) throw Error("io", "write_matrix_binary: stream write failed");
}

ComplexMatrix read_matrix_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InvalidArgument("not a WGNRMAT1 matrix file");
  }
  const std::uint64_t n = get_u64(in);
  if (n > 65535) throw InvalidArgument("matrix dimension in file too large");
  ComplexMatrix h(n, n);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      const double re = get_f64(in);
      const double im = get_f64(in);
      h(i, j) = {re, im};
    }
  }
  return h;
}

}  // namespace wigner
