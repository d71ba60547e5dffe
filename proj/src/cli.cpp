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

#include "wigner/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigner/errors.hpp"
#include "wigner/inverse_moments.hpp"
#include "wigner/report.hpp"
#include "wigner/schur.hpp"
#include "wigner/spectral.hpp"
#include "wigner/universality.hpp"
#include "wigner/wegner.hpp"

namespace wigner::cli {

using nlohmann::ordered_json;

EnsembleSpec parse_ensemble_spec(std::string_view offdiag, std::optional<std::string_view> diag,
                                 std::size_t N, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.N = N;
  spec.seed = seed;
  spec.offdiag = EntryDistribution::parse(offdiag);
  if (diag) {
    spec.diag = EntryDistribution::parse(*diag);
  } else {
    spec.diag = EntryDistribution::make_builtin(spec.offdiag.kind(), 1.0, spec.offdiag.sigma_mix());
  }
  spec.validate();
  return spec;
}

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  unsigned jobs = 1;
  std::string out_csv;
  std::string out_json;
  std::string manifest;
  std::string spec = "gaussian:0.5";
  std::string diag;
};

unsigned default_jobs() {
  if (const char* env = std::getenv("WIGNER_LAB_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    throw Error("config", "WIGNER_LAB_JOBS must be an integer in [1, 1024]");
  }
  return 1;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinityNorm;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw Error("config", "--p must be a number or 'inf'");
  return v;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("io", "cannot open '" + path + "' for writing");
  f << contents;
  if (!f.flush()) throw Error("io", "failed writing '" + path + "'");
}

EnsembleSpec make_spec(const Common& c, std::size_t N) {
  return parse_ensemble_spec(c.spec, c.diag.empty() ? std::nullopt : std::optional<std::string_view>(c.diag),
                             N, c.seed);
}

ordered_json spec_json(const EnsembleSpec& s) {
  return {{"N", s.N}, {"offdiag", s.offdiag.to_string()}, {"diag", s.diag.to_string()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  auto error_record = [&](const std::string& kind, const std::string& message, int code) {
    ordered_json e = {{"error", {{"kind", kind}, {"message", message}}}};
    err << e.dump() << '\n';
    return code;
  };

  Common c;
  try {
    c.jobs = default_jobs();
  } catch (const Error& e) {
    return error_record(e.kind(), e.what(), 2);
  }

  CLI::App app{"Monte Carlo spectral statistics of Hermitian Wigner matrices", "wigner-lab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--trials", c.trials, "Monte Carlo trials (samples for invmom)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", c.jobs, "worker threads (default: $WIGNER_LAB_JOBS or 1)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--out-csv", c.out_csv, "CSV report path (default: stdout)");
  app.add_option("--out-json", c.out_json, "JSON report path");
  app.add_option("--manifest", c.manifest, "run manifest path (default: <out-csv>.manifest.json)");
  app.add_option("--spec", c.spec, "off-diagonal law, law:variance[:sigma_mix]")->capture_default_str();
  app.add_option("--diag", c.diag, "diagonal law (default: off-diagonal law with variance 1)");

  ordered_json config = ordered_json::object();
  std::function<StatReport()> study;
  std::vector<std::string> flags;

  // dos
  auto* dos = app.add_subcommand("dos", "eigenvalue counts on macro/meso/micro windows");
  struct {
    std::size_t N = 500;
    double E = 0.0;
    std::string rule = "micro";
    std::vector<double> scales{5, 20, 50};
    double theta = 0.5;
    std::string normalization = "per_unit_length";
  } dos_args;
  dos->add_option("--N", dos_args.N)->capture_default_str();
  dos->add_option("--E", dos_args.E)->capture_default_str();
  dos->add_option("--rule", dos_args.rule)->check(CLI::IsMember({"macro", "meso", "micro"}))->capture_default_str();
  dos->add_option("--scales", dos_args.scales, "eta (macro) or K (micro) values")->delimiter(',');
  dos->add_option("--theta", dos_args.theta, "meso exponent, eta = N^-theta")->capture_default_str();
  dos->add_option("--normalization", dos_args.normalization)
      ->check(CLI::IsMember({"per_unit_length", "raw_count"}))
      ->capture_default_str();
  dos->callback([&] {
    study = [&] {
      const auto spec = make_spec(c, dos_args.N);
      DosQuery q;
      q.E = dos_args.E;
      q.rule = dos_args.rule == "macro" ? ScaleRule::macro
               : dos_args.rule == "meso" ? ScaleRule::meso
                                         : ScaleRule::micro;
      q.scales = dos_args.scales;
      q.theta = dos_args.theta;
      q.normalization = dos_args.normalization == "raw_count" ? DosNormalization::raw_count
                                                              : DosNormalization::per_unit_length;
      q.trials = c.trials;
      config = {{"ensemble", spec_json(spec)}, {"E", q.E}, {"rule", dos_args.rule},
                {"scales", q.scales}, {"theta", q.theta}, {"normalization", dos_args.normalization}};
      return dos_estimate(spec, q, {c.jobs}).to_report();
    };
  });

  // wegner
  auto* weg = app.add_subcommand("wegner", "P(eigenvalue within eps/2N of E) across eps");
  struct {
    std::size_t N = 100;
    double E = 0.0;
    double kappa = 0.5;
    std::vector<double> eps{0.05, 0.1, 0.2, 0.4};
  } weg_args;
  weg->add_option("--N", weg_args.N)->capture_default_str();
  weg->add_option("--E", weg_args.E)->capture_default_str();
  weg->add_option("--kappa", weg_args.kappa, "bulk margin, |E| <= 2 - kappa")->capture_default_str();
  weg->add_option("--eps", weg_args.eps)->delimiter(',');
  weg->callback([&] {
    study = [&] {
      const auto spec = make_spec(c, weg_args.N);
      WegnerQuery q{weg_args.E, weg_args.kappa, weg_args.eps, c.trials};
      config = {{"ensemble", spec_json(spec)}, {"E", q.E}, {"kappa", q.kappa}, {"eps", q.epsilons}};
      auto r = wegner_probability(q, spec, {c.jobs});
      flags = r.flags;
      return r.to_report();
    };
  });

  // gaps
  auto* gaps = app.add_subcommand("gaps", "gap tail above E (next) or the minor's Delta statistic (omega)");
  struct {
    std::string mode = "next";
    std::size_t N = 500;
    double E = 0.0;
    std::vector<double> K{1, 2, 4, 8, 16};
    double eps = 0.1;
    std::vector<std::size_t> N_grid;
  } gap_args;
  gaps->add_option("--mode", gap_args.mode)->check(CLI::IsMember({"next", "omega"}))->capture_default_str();
  gaps->add_option("--N", gap_args.N)->capture_default_str();
  gaps->add_option("--E", gap_args.E)->capture_default_str();
  gaps->add_option("--K", gap_args.K)->delimiter(',');
  gaps->add_option("--eps", gap_args.eps, "omega mode: epsilon")->capture_default_str();
  gaps->add_option("--N-grid", gap_args.N_grid, "omega mode: dimensions (default: --N)")->delimiter(',');
  gaps->callback([&] {
    study = [&] {
      if (gap_args.mode == "next") {
        const auto spec = make_spec(c, gap_args.N);
        config = {{"ensemble", spec_json(spec)}, {"mode", "next"}, {"E", gap_args.E}, {"K", gap_args.K}};
        return gap_tail(spec, gap_args.E, gap_args.K, c.trials, {c.jobs}).to_report();
      }
      const auto grid = gap_args.N_grid.empty() ? std::vector<std::size_t>{gap_args.N} : gap_args.N_grid;
      const auto spec = make_spec(c, std::max<std::size_t>(grid.front(), 2));
      config = {{"ensemble", spec_json(spec)}, {"mode", "omega"}, {"E", gap_args.E},
                {"eps", gap_args.eps}, {"K", gap_args.K}, {"N_grid", grid}};
      return delta_tail(spec, gap_args.E, gap_args.eps, gap_args.K, grid, c.trials, {c.jobs}).to_report();
    };
  });

  // deloc
  auto* del = app.add_subcommand("deloc", "normalized l^p norms of bulk eigenvectors");
  struct {
    std::size_t N = 500;
    double E = 0.0;
    double K = 5.0;
    std::string p = "4";
    bool random_phases = false;
  } del_args;
  del->add_option("--N", del_args.N)->capture_default_str();
  del->add_option("--E", del_args.E)->capture_default_str();
  del->add_option("--K", del_args.K, "window half-width in units of 1/N")->capture_default_str();
  del->add_option("--p", del_args.p, "norm exponent > 2, or 'inf'")->capture_default_str();
  del->add_flag("--randomize-phases", del_args.random_phases);
  del->callback([&] {
    study = [&] {
      const auto spec = make_spec(c, del_args.N);
      DelocQuery q{del_args.E, del_args.K, parse_p(del_args.p), c.trials, del_args.random_phases};
      config = {{"ensemble", spec_json(spec)}, {"E", q.E}, {"K", q.K}, {"p", del_args.p},
                {"randomize_phases", q.randomize_phases}};
      return deloc_statistic(spec, q, {c.jobs}).to_report();
    };
  });

  // corr
  auto* corr = app.add_subcommand("corr", "bulk two-point correlation against the sine kernel");
  struct {
    std::size_t N = 1000;
    double E = 0.0;
    std::vector<double> s{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0};
    double W = 10.0;
    double bin_width = 0.25;
    bool reflect = false;
  } corr_args;
  corr->add_option("--N", corr_args.N)->capture_default_str();
  corr->add_option("--E", corr_args.E)->capture_default_str();
  corr->add_option("--s", corr_args.s, "bin centres, rescaled units")->delimiter(',');
  corr->add_option("--W", corr_args.W, "window half-width, rescaled units")->capture_default_str();
  corr->add_option("--bin-width", corr_args.bin_width)->capture_default_str();
  corr->add_flag("--reflect", corr_args.reflect, "use the reflected spectrum -mu");
  corr->callback([&] {
    study = [&] {
      const auto spec = make_spec(c, corr_args.N);
      CorrelationQuery q{corr_args.E, corr_args.s, corr_args.W, corr_args.bin_width, c.trials,
                         corr_args.reflect};
      config = {{"ensemble", spec_json(spec)}, {"E", q.E}, {"s", q.s_grid}, {"W", q.W},
                {"bin_width", q.bin_width}, {"reflect", q.reflect}};
      return two_point_correlation(spec, q, {c.jobs}).to_report();
    };
  });

  // invmom
  auto* inv = app.add_subcommand("invmom", "inverse moments of projections of a random vector");
  struct {
    std::size_t m = 3;
    int r = 1;
    std::vector<std::size_t> N_grid{10, 100, 1000};
    std::string frame = "standard_basis";
    std::string law;
    std::size_t samples = 0;
  } inv_args;
  inv->add_option("--m", inv_args.m)->capture_default_str();
  inv->add_option("--r", inv_args.r)->check(CLI::IsMember({1, 2}))->capture_default_str();
  inv->add_option("--N-grid", inv_args.N_grid)->delimiter(',');
  inv->add_option("--frame", inv_args.frame)
      ->check(CLI::IsMember({"standard_basis", "random_orthonormal", "fourier_rows"}))
      ->capture_default_str();
  inv->add_option("--law", inv_args.law, "component law (default: --spec)");
  inv->add_option("--samples", inv_args.samples, "Monte Carlo samples (default: --trials)");
  inv->callback([&] {
    study = [&] {
      InverseMomentQuery q;
      q.m = inv_args.m;
      q.r = inv_args.r;
      q.N_grid = inv_args.N_grid;
      q.frame = inv_args.frame == "random_orthonormal" ? FrameRule::random_orthonormal
                : inv_args.frame == "fourier_rows"     ? FrameRule::fourier_rows
                                                       : FrameRule::standard_basis;
      q.law = EntryDistribution::parse(inv_args.law.empty() ? c.spec : inv_args.law);
      q.samples = inv_args.samples ? inv_args.samples : c.trials;
      q.seed = c.seed;
      config = {{"law", q.law.to_string()}, {"m", q.m}, {"r", q.r}, {"N_grid", q.N_grid},
                {"frame", inv_args.frame}, {"samples", q.samples}};
      return estimate_inverse_moment(q, {c.jobs}).to_report();
    };
  });

  // schur-check
  auto* sch = app.add_subcommand("schur-check", "Schur-complement resolvent against direct inversion");
  struct {
    std::size_t N = 20;
    std::vector<double> E{0.0, 1.0};
    std::vector<double> eps{1e-3, 0.1};
  } sch_args;
  sch->add_option("--N", sch_args.N)->capture_default_str();
  sch->add_option("--E", sch_args.E)->delimiter(',');
  sch->add_option("--eps", sch_args.eps)->delimiter(',');
  sch->callback([&] {
    study = [&] {
      const auto spec = make_spec(c, sch_args.N);
      config = {{"ensemble", spec_json(spec)}, {"E", sch_args.E}, {"eps", sch_args.eps}};
      return schur_check(spec, sch_args.E, sch_args.eps, c.trials, {c.jobs}).to_report();
    };
  });

  // gue-oracle
  auto* gue = app.add_subcommand("gue-oracle", "log of the GUE joint eigenvalue density");
  std::vector<double> gue_eigs;
  gue->add_option("--eigs", gue_eigs, "eigenvalues")->delimiter(',')->required();
  gue->callback([&] {
    study = [&] {
      config = {{"eigs", gue_eigs}};
      const auto d = gue_log_joint_density(gue_eigs);
      StatReport r;
      r.statistic = "gue_log_joint_density";
      ReportRow row;
      row.statistic = "gue_log_joint_density";
      row.E = std::nan("");
      row.scale = "eigenvalues";
      row.N = gue_eigs.size();
      row.K_or_eta = std::nan("");
      row.estimate = d.value;
      row.stderr_ = 0.0;
      row.trials = 1;
      row.seed = 0;
      row.extras = {{"normalized", d.normalized ? 1.0 : 0.0}};
      r.rows.push_back(row);
      if (!d.normalized) r.flags.push_back("normalizing constant omitted for N > 4");
      return r;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    return error_record("config", e.what(), 2);
  }

  try {
    const StatReport report = study();
    flags.insert(flags.end(), report.flags.begin(), report.flags.end());
    for (const auto& f : flags) {
      err << ordered_json({{"warning", f}}).dump() << '\n';
    }

    std::set<std::uint64_t> seeds;
    for (const auto& row : report.rows) seeds.insert(row.seed);
    ordered_json manifest = {
        {"tool", "wigner-lab"},
        {"version", kVersion},
        {"argv", args},
        {"subcommand", app.get_subcommands().front()->get_name()},
        {"config", config},
        {"master_seed", c.seed},
        {"seeds", seeds},
        {"trials", c.trials},
        {"jobs", c.jobs},
        {"requested_trials", report.requested_trials},
        {"failed_trials", report.failed_trials},
        {"flags", flags},
        {"started_utc", started},
        {"finished_utc", utc_now()},
    };

    const std::string csv = to_csv(report);
    if (c.out_csv.empty()) {
      out << csv;
    } else {
      write_file(c.out_csv, csv);
    }
    if (!c.out_json.empty()) {
      ordered_json doc = to_json(report);
      doc["manifest"] = manifest;
      write_file(c.out_json, doc.dump(2) + "\n");
    }
    const std::string manifest_path =
        !c.manifest.empty() ? c.manifest : (c.out_csv.empty() ? "" : c.out_csv + ".manifest.json");
    if (!manifest_path.empty()) write_file(manifest_path, manifest.dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    return error_record(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return error_record("internal", e.what(), 1);
  }
}

}  // namespace wigner::cli
