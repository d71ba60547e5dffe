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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wigner/cli.hpp"
#include "wigner/errors.hpp"

using namespace wigner;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("wigner_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_ensemble_spec") {
  const auto gue = cli::parse_ensemble_spec("gaussian:0.5", std::nullopt, 10, 3);
  CHECK(gue.offdiag.to_string() == "gaussian:0.5");
  CHECK(gue.diag.to_string() == "gaussian:1");
  CHECK(gue.N == 10);
  CHECK(gue.seed == 3);
  CHECK_THROWS_WITH_AS(cli::parse_ensemble_spec("gaussian:0.3", std::nullopt, 10, 3),
                       doctest::Contains("E x_jk^2 = 1/2"), InvalidArgument);
  const auto mix = cli::parse_ensemble_spec("smoothed_bernoulli:0.5:0.1", std::nullopt, 10, 3);
  CHECK(mix.offdiag.kind() == LawKind::smoothed_bernoulli);
  CHECK(mix.diag.variance() == 1.0);
  CHECK(mix.diag.sigma_mix().value() == doctest::Approx(0.1));
  CHECK_THROWS_AS(cli::parse_ensemble_spec("gaussian:0.5", std::string_view("gaussian:2"), 10, 3), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_ensemble_spec("gaussian:0.5:", std::nullopt, 10, 3), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_ensemble_spec("gauss:0.5", std::nullopt, 10, 3), InvalidArgument);
}

TEST_CASE("wegner writes four rows, a JSON report and a manifest") {
  const auto dir = scratch();
  const auto csv = dir / "w.csv";
  const auto json = dir / "w.json";
  const auto o = run({"wegner", "--spec", "gaussian:0.5", "--N", "30", "--E", "0", "--eps",
                      "0.05,0.1,0.2,0.4", "--trials", "300", "--seed", "1", "--out-csv", csv.string(),
                      "--out-json", json.string()});
  REQUIRE(o.code == 0);
  const auto text = slurp(csv);
  CHECK(lines(text) == 5);
  CHECK(text.rfind("statistic,E,scale,N,K_or_eta,estimate,stderr,trials,seed", 0) == 0);
  const auto manifest = nlohmann::json::parse(slurp(fs::path(csv.string() + ".manifest.json")));
  CHECK(manifest["version"] == cli::kVersion);
  CHECK(manifest["master_seed"] == 1);
  CHECK(manifest["failed_trials"] == 0);
  CHECK(manifest.contains("started_utc"));
  CHECK(manifest["argv"].size() > 5);
  const auto doc = nlohmann::json::parse(slurp(json));
  CHECK(doc["rows"].size() == 4);
  CHECK(doc.contains("manifest"));
  fs::remove_all(dir);
}

TEST_CASE("global flags may come before the subcommand") {
  const auto a = run({"--seed", "4", "--trials", "50", "wegner", "--N", "20"});
  const auto b = run({"wegner", "--N", "20", "--seed", "4", "--trials", "50"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("identical invocations are byte-identical for any job count") {
  const std::vector<std::vector<std::string>> studies = {
      {"dos", "--N", "60", "--trials", "8"},
      {"wegner", "--N", "20", "--trials", "40"},
      {"gaps", "--N", "40", "--trials", "20"},
      {"gaps", "--mode", "omega", "--N-grid", "9,15", "--trials", "20"},
      {"deloc", "--N", "60", "--trials", "6"},
      {"corr", "--N", "200", "--trials", "4", "--s", "0.5,1"},
      {"invmom", "--N-grid", "10,20", "--samples", "3000"},
      {"schur-check", "--N", "10", "--trials", "2"},
  };
  for (const auto& base : studies) {
    auto one = base;
    one.insert(one.end(), {"--jobs", "1", "--seed", "9"});
    auto three = base;
    three.insert(three.end(), {"--jobs", "3", "--seed", "9"});
    const auto a = run(one);
    const auto b = run(three);
    CAPTURE(base[0]);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == run(one).out);
  }
}

TEST_CASE("invmom refuses bernoulli with a JSON error record") {
  const auto o = run({"invmom", "--law", "bernoulli:0.5", "--samples", "10"});
  CHECK(o.code != 0);
  const auto e = nlohmann::json::parse(o.err);
  CHECK(e["error"]["kind"] == "hypothesis");
  CHECK(e["error"]["message"].get<std::string>().find("entry law has no density") != std::string::npos);
}

TEST_CASE("wegner warns for bernoulli but still runs") {
  const auto o = run({"wegner", "--spec", "bernoulli:0.5", "--N", "20", "--trials", "20"});
  CHECK(o.code == 0);
  CHECK(o.err.find("no density") != std::string::npos);
}

TEST_CASE("configuration errors") {
  CHECK(run({}).code != 0);
  CHECK(run({"bogus"}).code != 0);
  const auto bad = run({"wegner", "--spec", "gaussian:0.3"});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("E x_jk^2 = 1/2") != std::string::npos);
  CHECK(run({"wegner", "--trials", "0"}).code != 0);
  CHECK(run({"deloc", "--p", "abc", "--N", "20"}).code != 0);
  const auto io = run({"wegner", "--N", "20", "--trials", "5", "--out-csv", "/nonexistent/dir/x.csv"});
  CHECK(io.code != 0);
  CHECK(nlohmann::json::parse(io.err)["error"]["kind"] == "io");
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).out.find(cli::kVersion) != std::string::npos);
}

TEST_CASE("gue-oracle") {
  const auto o = run({"gue-oracle", "--eigs", "-0.3,0.8"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("gue_log_joint_density") != std::string::npos);
}

TEST_CASE("corr uses its own CSV columns") {
  const auto o = run({"corr", "--N", "200", "--trials", "2", "--s", "0.5,1.0"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("s_bin_center,R2_estimate,R2_stderr,sine_target\n", 0) == 0);
  CHECK(lines(o.out) == 3);
}

TEST_CASE("deloc accepts p = inf") {
  const auto o = run({"deloc", "--N", "40", "--trials", "3", "--p", "inf"});
  CHECK(o.code == 0);
}
