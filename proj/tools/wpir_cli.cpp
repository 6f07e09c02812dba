//
// Copyright 2026 The WPIR Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// wpir: CSV front end for scheme sweeps, the leakage optimizer, converse
// bounds and the verification harness.
//
// Exit codes: 0 success, 1 usage, 2 verification failure, 3 infeasible.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpir/wpir.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitInfeasible = 3;

struct CommonFlags {
  int files = 2;
  int servers = 2;
  std::uint64_t seed = 42;
  std::string out;
  bool normalize = false;
};

// Thrown for bad flag values found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw UsageError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void AddCommon(CLI::App* app, CommonFlags& f) {
  app->add_option("--M", f.files, "number of files")->check(CLI::Range(1, 4096));
  app->add_option("--n", f.servers, "number of servers")->check(CLI::Range(2, 256));
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--out", f.out, "output path (default: stdout)");
  app->add_flag("--normalize", f.normalize,
                "divide leakage by log2 M, upload by 2(M-1), access by M");
}

std::vector<double> Grid(const std::string& spec) {
  try {
    return wpir::ParseGrid(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

wpir::LeakageMetric ParseMetric(const std::string& name) {
  if (name == "mi") return wpir::LeakageMetric::kMi;
  if (name == "maxl") return wpir::LeakageMetric::kMaxl;
  throw UsageError("metric must be 'mi' or 'maxl'");
}

using wpir::FormatNumber;

int RunSweep(const CommonFlags& f, const std::string& family_name,
             const std::string& grid, std::uint64_t cap) {
  const auto family = wpir::ParseFamily(family_name);
  if (!family) throw UsageError("unknown family '" + family_name + "'");
  const auto params = Grid(grid);
  Output out(f.out);
  wpir::CsvWriter csv(out.stream(), {"family", "M", "n", "param", "rate", "upload",
                                     "access", "mi", "wil", "maxl", "epsp"});
  for (double p : params) {
    if (!wpir::InFamily(*family, f.files, f.servers, p)) continue;
    wpir::TradeoffPoint t;
    try {
      t = wpir::EvaluateFamily(*family, f.files, f.servers, p, cap);
    } catch (const wpir::CapacityError& e) {
      throw UsageError(e.what());
    }
    if (f.normalize) t = wpir::Normalize(t, f.files);
    csv.Row({family_name, std::to_string(f.files), std::to_string(f.servers),
             FormatNumber(p), FormatNumber(t.rate), FormatNumber(t.upload),
             FormatNumber(t.access), FormatNumber(t.rho_mi), FormatNumber(t.rho_wil),
             FormatNumber(t.rho_maxl), FormatNumber(t.rho_epsp)});
  }
  return kExitOk;
}

int RunOptimize(const CommonFlags& f, const std::string& metric_name,
                const std::string& grid) {
  const auto metric = ParseMetric(metric_name);
  const auto budgets = Grid(grid);
  Output out(f.out);
  wpir::CsvWriter csv(out.stream(), {"D", "rate", "rho", "gap", "status"});
  bool infeasible = false;
  const double bits = std::log2(static_cast<double>(f.files));
  for (double d : budgets) {
    try {
      const auto r = wpir::MinimizeLeakage({f.files, f.servers, metric, d});
      double rho = r.objective;
      if (f.normalize && f.files >= 2) rho /= bits;
      csv.Row({FormatNumber(d), FormatNumber(r.rate), FormatNumber(rho),
               FormatNumber(r.fw_gap), r.converged ? "ok" : "not-converged"});
    } catch (const wpir::InfeasibleError&) {
      infeasible = true;
      csv.Row({FormatNumber(d), "nan", "nan", "nan", "infeasible"});
    } catch (const wpir::CapacityError& e) {
      throw UsageError(e.what());
    }
  }
  return infeasible ? kExitInfeasible : kExitOk;
}

int RunBounds(const CommonFlags& f, const std::string& metric_name,
              const std::string& grid) {
  const auto metric = ParseMetric(metric_name);
  const auto rhos = Grid(grid);
  Output out(f.out);
  wpir::CsvWriter csv(out.stream(), {"rho", "r_ub_raw", "r_ub_clamped", "vacuous"});
  for (double rho : rhos) {
    if (rho < 0) throw UsageError("leakage grid must be >= 0");
    const auto b = metric == wpir::LeakageMetric::kMi
                       ? wpir::RUbMi(f.files, f.servers, rho)
                       : wpir::RUbMaxl(f.files, f.servers, rho);
    csv.Row({FormatNumber(rho), FormatNumber(b.raw), FormatNumber(b.clamped),
             b.vacuous ? "1" : "0"});
  }
  return kExitOk;
}

int RunCompareEpsp(const CommonFlags& f, const std::string& grid) {
  const auto rhos = Grid(grid);
  Output out(f.out);
  wpir::CsvWriter csv(out.stream(), {"rho", "r_lpir", "r_a", "r_ub_epsp"});
  for (double rho : rhos) {
    if (rho < 0) throw UsageError("leakage grid must be >= 0");
    csv.Row({FormatNumber(rho), FormatNumber(wpir::LpirRate(f.files, 2, rho)),
             FormatNumber(wpir::EpsPrivacyRateA(f.files, rho)),
             FormatNumber(wpir::LpirUb(f.files, 2, rho))});
  }
  return kExitOk;
}

nlohmann::json ToJson(const wpir::VerifyReport& rep, const wpir::VerifyOptions& opt) {
  nlohmann::json j;
  j["max_files"] = opt.max_files;
  j["max_servers"] = opt.max_servers;
  j["seed"] = opt.seed;
  j["db_samples"] = opt.db_samples;
  j["passed"] = rep.passed();
  j["suites"] = nlohmann::json::array();
  for (const auto& s : rep.suites) {
    j["suites"].push_back({{"name", s.name},
                           {"checks", s.checks},
                           {"failures", s.failures},
                           {"passed", s.passed()},
                           {"counterexamples", s.counterexamples}});
  }
  return j;
}

int RunVerify(const CommonFlags& f, int db_samples) {
  wpir::VerifyOptions opt;
  opt.max_files = f.files;
  opt.max_servers = f.servers;
  opt.seed = f.seed;
  opt.db_samples = db_samples;
  if (f.files > 6 || f.servers > 3) {
    throw UsageError("verify supports M <= 6 and n <= 3");
  }
  wpir::VerifyReport rep;
  try {
    rep = wpir::RunVerification(opt);
  } catch (const wpir::CapacityError& e) {
    throw UsageError(e.what());
  }
  for (const auto& s : rep.suites) {
    std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << s.checks
              << " checks, " << s.failures << " failures)\n";
    for (const auto& c : s.counterexamples) std::cout << "  counterexample: " << c << "\n";
  }
  const std::string path = f.out.empty() ? "wpir_verify.json" : f.out;
  std::ofstream json(path);
  if (!json) throw UsageError("cannot open results file " + path);
  json << ToJson(rep, opt).dump(2) << "\n";
  std::cout << (rep.passed() ? "verify: PASS" : "verify: FAIL") << " (results in "
            << path << ")\n";
  return rep.passed() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly-private information retrieval laboratory"};
  app.require_subcommand(1);

  CommonFlags sweep_flags, opt_flags, bounds_flags, eps_flags, verify_flags;
  std::string family, sweep_grid = "0:0.5:0.05";
  std::uint64_t cap = wpir::kDefaultEnumerationCap;
  auto* sweep = app.add_subcommand("sweep", "tradeoff tuples of a scheme family");
  AddCommon(sweep, sweep_flags);
  sweep->add_option("family", family,
                    "scheme-a-bernoulli | scheme-a-partition | scheme-b-bernoulli | "
                    "scheme-b-sphere")
      ->required();
  sweep->add_option("--grid", sweep_grid, "parameter grid start:end:step (p, eta or w)");
  sweep->add_option("--cap", cap, "enumeration cap (states x M)");

  std::string opt_metric = "mi", opt_grid = "1:2:0.05";
  auto* optimize = app.add_subcommand("optimize", "minimized leakage per download budget");
  AddCommon(optimize, opt_flags);
  optimize->add_option("--metric", opt_metric, "mi | maxl");
  optimize->add_option("--grid", opt_grid, "download budget grid start:end:step");

  std::string bounds_metric = "mi", bounds_grid = "0:1:0.05";
  auto* bounds = app.add_subcommand("bounds", "converse rate bounds");
  AddCommon(bounds, bounds_flags);
  bounds->add_option("--metric", bounds_metric, "mi | maxl");
  bounds->add_option("--grid", bounds_grid, "leakage grid in bits");

  std::string eps_grid = "0:5:0.1";
  auto* eps = app.add_subcommand("compare-epsp", "epsilon-privacy rates (n = 2)");
  AddCommon(eps, eps_flags);
  eps->add_option("--grid", eps_grid, "leakage grid in nats");

  int db_samples = 20;
  verify_flags.files = 4;
  verify_flags.servers = 3;
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  AddCommon(verify, verify_flags);
  verify->add_option("--db-samples", db_samples, "random databases per (m, s)")
      ->check(CLI::Range(1, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sweep) return RunSweep(sweep_flags, family, sweep_grid, cap);
    if (*optimize) return RunOptimize(opt_flags, opt_metric, opt_grid);
    if (*bounds) return RunBounds(bounds_flags, bounds_metric, bounds_grid);
    if (*eps) return RunCompareEpsp(eps_flags, eps_grid);
    if (*verify) return RunVerify(verify_flags, db_samples);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
