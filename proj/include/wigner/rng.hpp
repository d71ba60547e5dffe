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

#ifndef WIGNER_RNG_HPP
#define WIGNER_RNG_HPP

#include <array>
#include <cstdint>

namespace wigner {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: maps a
/// 128-bit counter and 64-bit key to 128 pseudo-random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// Separates the random streams of unrelated consumers sharing one seed.
enum class StreamDomain : std::uint32_t {
  entry_sample = 1,
  ensemble = 2,
  inverse_moment = 3,
  frame = 4,
  phase = 5,
  unitary = 6,
  ordering = 7,
};

/// An independent random stream addressed by (seed, domain, trial, index).
///
/// Counter words are laid out as {block, index, trial, domain} and the key is
/// the 64-bit master seed, so any stream can be reconstructed without
/// touching others. Trial and index must fit in 32 bits.
class DrawStream {
 public:
  DrawStream(std::uint64_t seed, StreamDomain domain, std::uint64_t trial,
             std::uint64_t index);

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double next_uniform() noexcept;

  /// Standard normal via Box-Muller (cosine branch).
  double next_normal() noexcept;

 private:
  Philox4x32::Counter ctr_;
  Philox4x32::Key key_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
};

/// SplitMix64 finalizer applied to master ^ salt-mix; gives well separated
/// seeds for sub-studies (e.g. one per matrix dimension).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) noexcept;

}  // namespace wigner

#endif  // WIGNER_RNG_HPP
