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


#include "saddle/bench.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.h"
#include "saddle/error.h"

namespace saddle {
namespace {

using testing::CodeOf;

constexpr const char* kValid =
    R"({"seed":5,"dx":4,"dy":3,"Lx":10,"Ly":20,"mux":1,"muy":2,"normA":3,)"
    R"("solver":"apfb","eps":1e-6,"max_outer":500})";

ExperimentConfig Config(const std::string& solver, uint64_t seed, int d, double L, double mux,
                        double muy, double normA, double eps) {
  ExperimentConfig c;
  c.seed = seed;
  c.dx = c.dy = d;
  c.Lx = c.Ly = L;
  c.mux = mux;
  c.muy = muy;
  c.normA = normA;
  c.solver = solver;
  c.eps = eps;
  c.max_outer = 5000;
  return c;
}

TEST(ExperimentConfig, ParsesAndRoundTrips) {
  const ExperimentConfig c = experiment_config_from_json(kValid);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.dy, 3);
  EXPECT_EQ(c.solver, "apfb");
  EXPECT_TRUE(c.out_path.empty());
  const ExperimentConfig back = experiment_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  ExperimentConfig with_out = c;
  with_out.out_path = "t.csv";
  EXPECT_EQ(experiment_config_from_json(to_json(with_out)).out_path, "t.csv");
}

TEST(ExperimentConfig, Rejections) {
  auto code = [](const std::string& text) {
    return CodeOf([&] { experiment_config_from_json(text); });
  };
  std::string unknown = kValid;
  unknown.insert(1, R"("extra":1,)");
  EXPECT_EQ(code(unknown), ErrorCode::kConfig);
  EXPECT_EQ(code("{"), ErrorCode::kConfig);
  EXPECT_EQ(code("[]"), ErrorCode::kConfig);
  EXPECT_EQ(code(R"({"seed":1})"), ErrorCode::kConfig);
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = kValid;
    s.replace(s.find(from), from.size(), to);
    return code(s);
  };
  EXPECT_EQ(replaced(R"("apfb")", R"("newton")"), ErrorCode::kConfig);
  EXPECT_EQ(replaced(R"("eps":1e-6)", R"("eps":0)"), ErrorCode::kConfig);
  EXPECT_EQ(replaced(R"("max_outer":500)", R"("max_outer":0)"), ErrorCode::kConfig);
  EXPECT_EQ(replaced(R"("mux":1)", R"("mux":11)"), ErrorCode::kConfig);
  EXPECT_EQ(replaced(R"("normA":3)", R"("normA":-3)"), ErrorCode::kConfig);
  EXPECT_EQ(replaced(R"("dx":4)", R"("dx":"four")"), ErrorCode::kConfig);
  try {
    experiment_config_from_json(unknown);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("extra"), std::string::npos);
  }
}

TEST(GenerateProblem, TrivialDecoupled) {
  const GeneratedProblem g = generate_problem(Config("apfb", 1, 1, 1, 1, 1, 0, 1e-6));
  EXPECT_NEAR(g.reference.x_star[0], g.problem.g().minimizer()[0], 1e-15);
  EXPECT_NEAR(g.reference.y_star[0], g.problem.h().minimizer()[0], 1e-15);
}

TEST(GenerateProblem, DeterministicAndCertified) {
  ExperimentConfig c = Config("apfb", 5, 6, 50, 1, 1, 2, 1e-6);
  const GeneratedProblem a = generate_problem(c);
  const GeneratedProblem b = generate_problem(c);
  EXPECT_EQ(a.problem.g().hessian(), b.problem.g().hessian());
  EXPECT_EQ(a.reference.x_star, b.reference.x_star);
  const Eigen::VectorXd ev = testing::Eigenvalues(a.problem.g().hessian());
  EXPECT_NEAR(ev.minCoeff(), 1, 1e-10);
  EXPECT_NEAR(ev.maxCoeff(), 50, 1e-9);
}

TEST(RunExperiment, AgdWithinInvertedBound) {
  const ExperimentConfig c = Config("agd", 3, 10, 100, 1, 4, 0, 1e-8);
  const ExperimentResult r = run_experiment(c);
  ASSERT_TRUE(r.reached_eps);
  EXPECT_TRUE(r.monitors_passed());
  // gap >= (mu/2)||e||^2 and ||ex|| + ||ey|| <= sqrt(2)||e||.
  const double ell = 100, mu = 1;
  const double d0 = r.trace.records.front().dist_sq_x + r.trace.records.front().dist_sq_y;
  const int T = static_cast<int>(
      std::ceil(std::sqrt(ell / mu) * std::log(2 * (ell + mu) * d0 / (mu * c.eps * c.eps))));
  EXPECT_LE(r.trace.back().k, T + 1);
  EXPECT_EQ(CodeOf([] { run_experiment(Config("agd", 3, 2, 10, 1, 1, 1, 1e-6)); }),
            ErrorCode::kConfig);
}

TEST(RunExperiment, DippaTerminatesBeforeTheoremCount) {
  const ExperimentConfig c = Config("dippa", 2, 10, 16, 1, 1, 40, 1e-6);
  const ExperimentResult r = run_experiment(c);
  ASSERT_TRUE(r.reached_eps);
  EXPECT_TRUE(r.monitors_passed());
  const double C = r.trace.param("C"), c0 = r.trace.param("C0"), rho = r.trace.param("rho");
  // Squared distance <= eps^2 / 2 implies the unsquared sum <= eps.
  const int K = static_cast<int>(std::ceil(std::log(2 * C * c0 / (c.eps * c.eps)) / -std::log(1 - rho)));
  EXPECT_LE(r.trace.back().k, K);
}

TEST(RunExperiment, EverySolverReachesTargetAndPassesMonitors) {
  for (std::string_view name : kSolverNames) {
    const bool balanced = name == "dppa" || name == "dippa";
    ExperimentConfig c = Config(std::string(name), 4, 6, 20, 1, balanced ? 1 : 4,
                                name == "agd" ? 0 : 5, 1e-5);
    const ExperimentResult r = run_experiment(c);
    EXPECT_TRUE(r.reached_eps) << name;
    EXPECT_TRUE(r.monitors_passed()) << name;
    EXPECT_EQ(r.trace.param("seed"), 4);
  }
}

TEST(RunExperiment, CsvRoundTripReproducesVerdicts) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "saddle_bench_test";
  fs::create_directories(dir);
  for (std::string_view name : kSolverNames) {
    const bool balanced = name == "dppa" || name == "dippa";
    ExperimentConfig c = Config(std::string(name), 8, 5, 30, 1, balanced ? 1 : 3,
                                name == "agd" ? 0 : 6, 1e-5);
    c.out_path = (dir / (std::string(name) + ".csv")).string();
    const ExperimentResult r = run_experiment(c);
    const RunTrace back = read_csv_file(c.out_path);
    ASSERT_TRUE(back.footer_totals);
    EXPECT_EQ(*back.footer_totals, r.trace.totals());
    // Sum of per-row deltas equals the footer.
    OracleTally sum;
    for (size_t i = 1; i < back.records.size(); ++i) {
      sum += back.records[i].tally - back.records[i - 1].tally;
    }
    EXPECT_EQ(sum, *back.footer_totals);
    for (const PropertyReport& online : r.reports) {
      const PropertyReport offline = monitor_bound(back, parse_monitor(online.name));
      EXPECT_EQ(offline.passed(), online.passed()) << online.name;
      EXPECT_EQ(offline.trials, online.trials) << online.name;
      EXPECT_EQ(offline.failures, online.failures) << online.name;
      EXPECT_EQ(offline.worst_slack, online.worst_slack) << online.name;
    }
  }
  fs::remove_all(dir);
}

TEST(RunExperiment, DeterministicCsv) {
  const ExperimentConfig c = Config("catalyst-aipfb", 6, 6, 40, 1, 8, 10, 1e-6);
  EXPECT_EQ(to_csv(run_experiment(c).trace), to_csv(run_experiment(c).trace));
}

TEST(RunBatch, SerialAndParallelAgree) {
  std::vector<ExperimentConfig> configs;
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    configs.push_back(Config(seed % 2 ? "apfb" : "dippa", seed, 6, 16, 1, 1, 4, 1e-6));
  }
  const auto a = run_batch(configs, Execution::kSerial);
  const auto b = run_batch(configs, Execution::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_csv(a[i].trace), to_csv(b[i].trace));
}

TEST(RunBatch, PropagatesErrors) {
  std::vector<ExperimentConfig> configs = {Config("apfb", 1, 3, 10, 1, 1, 1, 1e-6),
                                           Config("agd", 1, 3, 10, 1, 1, 1, 1e-6)};
  EXPECT_EQ(CodeOf([&] { run_batch(configs); }), ErrorCode::kConfig);
}

TEST(Curves, ZeroCoupling) {
  const auto pts = complexity_curves(100, 100, 1, 10, {0});
  const double kx = 100, ky = 10;
  EXPECT_DOUBLE_EQ(pts[0].upper_this_paper, std::pow(kx * ky * (kx + ky), 0.25));
  EXPECT_DOUBLE_EQ(pts[0].lower, std::sqrt(kx + ky));
}

// The ordering is an order-of-magnitude statement, so it is checked with the
// max combination. Summed unit constants favour the other row once both
// share the coupling term.
TEST(Curves, ThisPaperBelowWangInCouplingRegime) {
  for (double muy : {10.0, 2.0, 50.0}) {
    const double Lx = 100, mux = 1;
    const auto pts = complexity_curves(Lx, Lx, mux, muy, parse_grid("1:1000:log200"));
    int checked = 0;
    for (const auto& p : pts) {
      if (p.normA * p.normA < Lx * muy + Lx * mux) continue;
      EXPECT_LE(p.upper_this_paper, p.upper_wang * (1 + 1e-12)) << p.normA;
      ++checked;
    }
    EXPECT_GT(checked, 50);
  }
}

TEST(Curves, SameCouplingTermAsLowerBound) {
  const double kx = 100, ky = 10;
  const double gap = std::pow(kx * ky * (kx + ky), 0.25) - std::sqrt(kx + ky);
  const auto sum = complexity_curves(100, 100, 1, 10, {1e3, 1e5, 1e7}, Combine::kSum);
  for (const auto& p : sum) EXPECT_NEAR(p.upper_this_paper - p.lower, gap, 1e-6 * p.lower);
  const auto max = complexity_curves(100, 100, 1, 10, {1e5}, Combine::kMax);
  EXPECT_EQ(max[0].upper_this_paper, max[0].lower);
}

TEST(Curves, MonotoneNonnegativeAndRescalingInvariant) {
  const std::vector<double> grid = parse_grid("0.1:500:log60");
  const auto a = complexity_curves(50, 80, 2, 5, grid);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(a[i].lower, 0);
    if (i == 0) continue;
    EXPECT_GE(a[i].upper_this_paper, a[i - 1].upper_this_paper);
    EXPECT_GE(a[i].upper_wang, a[i - 1].upper_wang);
    EXPECT_GE(a[i].upper_lin, a[i - 1].upper_lin);
    EXPECT_GE(a[i].upper_nesterov, a[i - 1].upper_nesterov);
    EXPECT_GE(a[i].lower, a[i - 1].lower);
  }
  // y -> c y: Ly, muy scale by c^2 and ||A|| by c.
  const double c = 3;
  std::vector<double> scaled_grid;
  for (double v : grid) scaled_grid.push_back(c * v);
  const auto b = complexity_curves(50, 80 * c * c, 2, 5 * c * c, scaled_grid);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(testing::RelErr(b[i].upper_this_paper, a[i].upper_this_paper), 1e-12);
    EXPECT_LE(testing::RelErr(b[i].upper_lin, a[i].upper_lin), 1e-12);
    EXPECT_LE(testing::RelErr(b[i].lower, a[i].lower), 1e-12);
  }
}

TEST(Curves, CsvAndErrors) {
  std::ostringstream out;
  write_curves_csv(complexity_curves(1, 1, 1, 1, {0, 1}), out);
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "normA,this_paper,wang,lin,nesterov,lower");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(CodeOf([] { complexity_curves(1, 1, 1, 1, {}); }), ErrorCode::kBadArgument);
  EXPECT_EQ(CodeOf([] { complexity_curves(1, 1, 1, 1, {-1}); }), ErrorCode::kBadArgument);
  EXPECT_EQ(CodeOf([] { complexity_curves(1, 1, 2, 1, {1}); }), ErrorCode::kBadArgument);
}

TEST(ParseGrid, Forms) {
  const auto log = parse_grid("1:1000:log50");
  ASSERT_EQ(log.size(), 50u);
  EXPECT_EQ(log.front(), 1);
  EXPECT_EQ(log.back(), 1000);
  for (size_t i = 1; i < log.size(); ++i) {
    EXPECT_GT(log[i], log[i - 1]);
    EXPECT_NEAR(log[i] / log[i - 1], std::pow(1000.0, 1.0 / 49), 1e-12);
  }
  EXPECT_EQ(parse_grid("0:10:lin3"), (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(parse_grid("2:9:lin1"), (std::vector<double>{2}));
  EXPECT_EQ(parse_grid("1,2.5,4"), (std::vector<double>{1, 2.5, 4}));
  for (const char* bad : {"", "1:2", "1:2:cub3", "0:10:log5", "5:1:lin3", "1:2:lin0", "1,,2",
                          "1:2:lin2.5", "x"}) {
    EXPECT_EQ(CodeOf([&] { parse_grid(bad); }), ErrorCode::kBadArgument) << bad;
  }
}

}  // namespace
}  // namespace saddle
