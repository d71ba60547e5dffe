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

#ifndef WIGNER_CLI_HPP
#define WIGNER_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wigner/ensemble.hpp"

namespace wigner::cli {

inline constexpr const char* kVersion = "0.1.0";

/// "law:variance[:sigma_mix]" for the off-diagonal components; the diagonal
/// defaults to the same law with variance 1. Variances other than 1/2 and 1
/// are rejected.
EnsembleSpec parse_ensemble_spec(std::string_view offdiag, std::optional<std::string_view> diag,
                                 std::size_t N, std::uint64_t seed);

/// Runs one subcommand. args excludes the program name. Results go to files
/// or `out`; errors are a single JSON record on `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wigner::cli

#endif  // WIGNER_CLI_HPP
