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

#ifndef WIGNER_PARALLEL_HPP
#define WIGNER_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

struct RunOptions {
  unsigned jobs = 1;
};

/// Runs fn(trial) for trial in [0, count) on `jobs` workers pulling indices
/// from a shared counter. Results are stored by trial index, so the output
/// does not depend on scheduling. Trials whose eigensolver fails come back
/// as std::nullopt; any other exception aborts the run and is rethrown.
template <class Fn>
auto run_trials(std::size_t count, unsigned jobs, Fn&& fn)
    -> std::vector<std::optional<decltype(fn(std::size_t{}))>> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> results(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t trial = next.fetch_add(1);
      if (trial >= count) return;
      try {
        results[trial] = fn(trial);
      } catch (const EigensolverFailure&) {
        results[trial] = std::nullopt;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        abort = true;
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace wigner

#endif  // WIGNER_PARALLEL_HPP
