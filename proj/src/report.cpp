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

#include "wigner/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace wigner {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const StatReport& report) {
  std::ostringstream out;
  if (report.layout == CsvLayout::correlation) {
    out << "s_bin_center,R2_estimate,R2_stderr,sine_target\n";
    for (const auto& row : report.rows) {
      double target = std::nan("");
      for (const auto& [key, value] : row.extras) {
        if (key == "sine_target") target = value;
      }
      out << format_number(row.K_or_eta) << ',' << format_number(row.estimate) << ','
          << format_number(row.stderr_) << ',' << format_number(target) << '\n';
    }
    return out.str();
  }

  out << "statistic,E,scale,N,K_or_eta,estimate,stderr,trials,seed";
  if (!report.rows.empty()) {
    for (const auto& extra : report.rows.front().extras) out << ',' << extra.first;
  }
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.statistic << ',' << format_number(row.E) << ',' << row.scale << ','
        << row.N << ',' << format_number(row.K_or_eta) << ','
        << format_number(row.estimate) << ',' << format_number(row.stderr_) << ','
        << row.trials << ',' << row.seed;
    for (const auto& extra : row.extras) out << ',' << format_number(extra.second);
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json to_json(const StatReport& report) {
  using nlohmann::ordered_json;
  const auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["statistic"] = row.statistic;
    r["E"] = num(row.E);
    r["scale"] = row.scale;
    r["N"] = row.N;
    r["K_or_eta"] = num(row.K_or_eta);
    r["estimate"] = num(row.estimate);
    r["stderr"] = num(row.stderr_);
    r["trials"] = row.trials;
    r["seed"] = row.seed;
    ordered_json extras = ordered_json::object();
    for (const auto& [key, value] : row.extras) extras[key] = num(value);
    r["extras"] = std::move(extras);
    rows.push_back(std::move(r));
  }
  ordered_json doc;
  doc["statistic"] = report.statistic;
  doc["requested_trials"] = report.requested_trials;
  doc["failed_trials"] = report.failed_trials;
  doc["flags"] = report.flags;
  doc["rows"] = std::move(rows);
  doc["summary"] = report.summary;
  return doc;
}

}  // namespace wigner
