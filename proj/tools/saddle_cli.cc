// Copyright 2026 The Saddle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line harness: gen | run | verify | curves.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "saddle/bench.h"
#include "saddle/error.h"
#include "saddle/problem.h"
#include "saddle/trace.h"
#include "saddle/verify.h"

namespace {

constexpr int kMonitorFailure = 1;
constexpr int kUsageError = 2;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw saddle::Error(saddle::ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw saddle::Error(saddle::ErrorCode::kIo, "cannot open '" + path + "'");
  out << text;
}

void PrintReport(const saddle::PropertyReport& r) {
  std::cout << "monitor " << r.name << ": " << (r.passed() ? "PASS" : "FAIL")
            << " trials=" << r.trials << " failures=" << r.failures
            << " worst_slack=" << saddle::format_double(r.worst_slack);
  if (r.observed_rate) std::cout << " observed_rate=" << saddle::format_double(*r.observed_rate);
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilinear saddle point solvers and bound certification"};
  app.require_subcommand(1);

  saddle::ProblemSpec spec;
  std::string gen_config;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a problem JSON");
  gen->add_option("--config", gen_config, "Experiment config to take the problem from");
  gen->add_option("--seed", spec.seed);
  gen->add_option("--dx", spec.dx);
  gen->add_option("--dy", spec.dy);
  gen->add_option("--Lx", spec.Lx);
  gen->add_option("--Ly", spec.Ly);
  gen->add_option("--mux", spec.mux);
  gen->add_option("--muy", spec.muy);
  gen->add_option("--normA", spec.normA);
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  std::string run_config;
  std::string run_out;
  uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "Run a solver from a config and write its trace");
  run->add_option("--config", run_config)->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "Override the config seed");
  run->add_option("--out", run_out, "Override the CSV output path");

  std::string trace_path;
  std::string which;
  auto* verify = app.add_subcommand("verify", "Re-certify a trace CSV");
  verify->add_option("--trace", trace_path)->required();
  verify->add_option("--which", which, "Monitor name (default: all for the trace's solver)");

  double Lx = 1, Ly = 1, mux = 1, muy = 1;
  std::string grid = "1:1000:log50";
  std::string combine = "max";
  std::string curves_out;
  auto* curves = app.add_subcommand("curves", "Write the complexity curves CSV");
  curves->add_option("--Lx", Lx)->required();
  curves->add_option("--Ly", Ly)->required();
  curves->add_option("--mux", mux)->required();
  curves->add_option("--muy", muy)->required();
  curves->add_option("--grid", grid);
  curves->add_option("--combine", combine)->check(CLI::IsMember({"max", "sum"}));
  curves->add_option("--out", curves_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) {
      if (!gen_config.empty()) {
        spec = saddle::experiment_config_from_json(ReadFile(gen_config)).problem();
      }
      saddle::validate(spec);
      WriteText(gen_out, saddle::to_json(spec) + "\n");
      return 0;
    }
    if (*run) {
      saddle::ExperimentConfig cfg = saddle::experiment_config_from_json(ReadFile(run_config));
      if (*seed_opt) cfg.seed = run_seed;
      if (!run_out.empty()) cfg.out_path = run_out;
      if (cfg.out_path.empty()) {
        throw saddle::Error(saddle::ErrorCode::kConfig, "out_path: missing (set it or pass --out)");
      }
      const saddle::ExperimentResult result = saddle::run_experiment(cfg);
      const auto& last = result.trace.back();
      std::cout << "solver " << result.trace.solver << ": outer=" << last.k
                << " oracle_calls=" << last.tally.total()
                << " reached_eps=" << (result.reached_eps ? "yes" : "no") << '\n';
      for (const auto& r : result.reports) PrintReport(r);
      return result.monitors_passed() ? 0 : kMonitorFailure;
    }
    if (*verify) {
      const saddle::RunTrace trace = saddle::read_csv_file(trace_path);
      const auto monitors = which.empty() ? saddle::monitors_for(trace.solver)
                                          : std::vector{saddle::parse_monitor(which)};
      bool ok = true;
      if (trace.footer_totals && !(*trace.footer_totals == trace.totals())) {
        std::cout << "totals footer: FAIL (does not match the last row)\n";
        ok = false;
      }
      for (auto m : monitors) {
        const auto report = saddle::monitor_bound(trace, m);
        PrintReport(report);
        ok = ok && report.passed();
      }
      return ok ? 0 : kMonitorFailure;
    }
    if (*curves) {
      const auto points = saddle::complexity_curves(
          Lx, Ly, mux, muy, saddle::parse_grid(grid),
          combine == "sum" ? saddle::Combine::kSum : saddle::Combine::kMax);
      std::ostringstream ss;
      saddle::write_curves_csv(points, ss);
      WriteText(curves_out, ss.str());
      return 0;
    }
  } catch (const saddle::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
