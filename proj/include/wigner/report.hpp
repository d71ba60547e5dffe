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

#ifndef WIGNER_REPORT_HPP
#define WIGNER_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace wigner {

struct ReportRow {
  std::string statistic;
  double E = 0.0;
  std::string scale;
  std::size_t N = 0;
  double K_or_eta = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;  // effective (valid) trials behind this row
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> extras;
};

enum class CsvLayout {
  canonical,    // statistic,E,scale,N,K_or_eta,estimate,stderr,trials,seed[,extras...]
  correlation,  // s_bin_center,R2_estimate,R2_stderr,sine_target
};

/// Named statistic evaluated over a grid, with Monte Carlo errors and
/// bookkeeping for failed trials.
struct StatReport {
  std::string statistic;
  CsvLayout layout = CsvLayout::canonical;
  std::vector<ReportRow> rows;
  std::size_t requested_trials = 0;
  std::size_t failed_trials = 0;
  std::vector<std::string> flags;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// Formats with 17 significant digits ("%.17g").
std::string format_number(double v);

std::string to_csv(const StatReport& report);
nlohmann::ordered_json to_json(const StatReport& report);

}  // namespace wigner

#endif  // WIGNER_REPORT_HPP
