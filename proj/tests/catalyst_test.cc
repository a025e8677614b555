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


#include "saddle/catalyst.h"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.h"
#include "saddle/bench.h"
#include "saddle/error.h"

namespace saddle {
namespace {

using testing::CodeOf;
using testing::Mat;
using testing::RelErr;
using testing::Vec;

TEST(CatalystParams, WorkedExample) {
  const CatalystParams prm = catalyst_params(100, 100, 1, 10);
  EXPECT_NEAR(prm.beta, 10, 1e-13);
  EXPECT_NEAR((100 + prm.beta) / (1 + prm.beta), 10, 1e-12);
  EXPECT_NEAR(prm.q, 1.0 / 11, 1e-15);
  const double r = 1 / std::sqrt(11.0);
  EXPECT_NEAR(prm.theta, (1 - r) / (1 + r), 1e-15);
  EXPECT_NEAR(prm.eps(2, 3), 2 * std::pow(1 - 0.9 * r, 3), 1e-15);
}

TEST(CatalystParams, Degenerate) {
  const CatalystParams prm = catalyst_params(50, 50, 2, 2);
  EXPECT_EQ(prm.beta, 0);
  EXPECT_EQ(prm.q, 1);
  EXPECT_EQ(prm.theta, 0);
}

TEST(CatalystParams, BalancingIdentity) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double L = std::exp(rng.Uniform(0, 8));
    const double muy = L * std::exp(rng.Uniform(-8, -0.01));
    const double mux = muy * std::exp(rng.Uniform(-6, 0));
    const CatalystParams prm = catalyst_params(L, L, mux, muy);
    EXPECT_GE(prm.beta, 0);
    EXPECT_GT(prm.q, 0);
    EXPECT_LE(prm.q, 1);
    EXPECT_GE(prm.theta, 0);
    EXPECT_LT(prm.theta, 1);
    EXPECT_LE(RelErr((L + prm.beta) / (mux + prm.beta), L / muy), 1e-12);
  }
}

TEST(CatalystParams, Errors) {
  EXPECT_EQ(CodeOf([] { catalyst_params(100, 90, 1, 10); }), ErrorCode::kNotRescaled);
  EXPECT_EQ(CodeOf([] { catalyst_params(100, 100, 10, 1); }), ErrorCode::kBadOrdering);
  EXPECT_EQ(CodeOf([] { catalyst_params(100, 100, 1, 100); }), ErrorCode::kBadOrdering);
}

TEST(CatalystEnvelope, CompleteTheSquare) {
  const SaddleProblem p(QuadraticFunction(Mat(1, 1, {1}), Vec({0}), 1, 1),
                        QuadraticFunction(Mat(1, 1, {1}), Vec({0}), 1, 1),
                        CouplingOperator(Mat(1, 1, {0})));
  const SaddleProblem e = catalyst_envelope(p, 1, Vec({2}));
  EXPECT_NEAR(e.g().minimizer()[0], 1, 1e-15);
  EXPECT_EQ(e.g().hessian()(0, 0), 2);
  EXPECT_EQ(e.g().linear()[0], -2);
}

TEST(CatalystEnvelope, ZeroBetaIsIdentityAndHAPreserved) {
  const SaddleProblem p = make_problem({2, 8, 8, 100, 100, 1, 10, 30});
  const Vector c = Rng(3).NormalVector(8);
  const SaddleProblem same = catalyst_envelope(p, 0, c);
  EXPECT_EQ(same.g().hessian(), p.g().hessian());
  EXPECT_EQ(same.g().linear(), p.g().linear());
  const SaddleProblem e = catalyst_envelope(p, 10, c);
  EXPECT_EQ(e.h().hessian(), p.h().hessian());
  EXPECT_EQ(e.h().linear(), p.h().linear());
  EXPECT_EQ(e.coupling().matrix(), p.coupling().matrix());
  // Spectrum check: the envelope is balanced.
  const Eigen::VectorXd ev = testing::Eigenvalues(e.g().hessian());
  EXPECT_NEAR(ev.maxCoeff() / ev.minCoeff(), 10, 1e-8);
  EXPECT_NEAR(e.kappa_x(), e.kappa_y(), 1e-12);
}

TEST(RescaleEnvelope, ScaleAndRoundTrip) {
  const SaddleProblem p = make_problem({5, 8, 8, 100, 100, 1, 10, 30});
  const SaddleProblem e = catalyst_envelope(p, 10, Rng(9).NormalVector(8));
  const RescaledProblem r = rescale_envelope(e, 100, 10);
  EXPECT_DOUBLE_EQ(r.scale, std::sqrt(100.0 / 110));
  EXPECT_LE(RelErr(r.problem.coupling().norm(), e.coupling().norm() * r.scale), 1e-10);
  EXPECT_LE(RelErr(r.problem.g().smoothness(), r.problem.h().smoothness()), 1e-12);
  EXPECT_LE(RelErr(r.problem.kappa_x(), e.kappa_x()), 1e-10);
  EXPECT_LE(RelErr(r.problem.coupling_condition(), e.coupling_condition()), 1e-10);
  EXPECT_TRUE(r.problem.balanced());
  const auto [xs, ys] = testing::BlockSaddle(r.problem);
  const SaddleReference ref = reference_saddle(e);
  EXPECT_LE((r.scale * xs - ref.x_star).norm() + (ys - ref.y_star).norm(), 1e-8);
  EXPECT_EQ(rescale_envelope(e, 100, 0).scale, 1);
}

void ExpectSameTrace(const RunTrace& a, const RunTrace& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].x, b.records[i].x);
    EXPECT_EQ(a.records[i].y, b.records[i].y);
    EXPECT_EQ(a.records[i].tally, b.records[i].tally);
  }
}

TEST(Catalyst, DegenerateWrapEqualsInnerSolver) {
  const SaddleProblem p = make_problem({7, 6, 6, 16, 16, 1, 1, 5});
  const SaddleReference ref = reference_saddle(p);
  const Vector x0 = Vector::Zero(6), y0 = Vector::Zero(6);
  const double c0 = squared_distance(ref, x0, y0);
  CatalystOptions opt;
  opt.reference = &ref;
  OracleTally a, b;
  ExpectSameTrace(catalyst_dippa(p, x0, y0, 30, c0, a, opt), dippa(p, x0, y0, 30, c0, b, opt));
  EXPECT_EQ(a, b);
  OracleTally c, d;
  ExpectSameTrace(catalyst_aipfb(p, x0, y0, 30, c0, c, opt), aipfb(p, x0, y0, 30, c0, d, opt));
  EXPECT_EQ(c, d);
}

class CatalystFinal : public ::testing::TestWithParam<bool> {};

TEST_P(CatalystFinal, ReachesScheduledTolerance) {
  const bool exact = GetParam();
  const SaddleProblem p = make_problem({3, 8, 8, 100, 100, 1, 10, 30});
  const SaddleReference ref = reference_saddle(p);
  const Vector x0 = Vector::Zero(8), y0 = Vector::Zero(8);
  const double eps0 = squared_distance(ref, x0, y0);
  const CatalystParams prm = catalyst_params(100, 100, 1, 10);
  int K = 1;
  while (prm.eps(eps0, K) > 1e-10) ++K;
  CatalystOptions opt;
  opt.reference = &ref;
  opt.exact_subproblem_c0 = exact;
  for (int which = 0; which < 2; ++which) {
    OracleTally t;
    const RunTrace tr = which == 0 ? catalyst_dippa(p, x0, y0, K, eps0, t, opt)
                                   : catalyst_aipfb(p, x0, y0, K, eps0, t, opt);
    EXPECT_TRUE(is_eps_saddle(ref, tr.x, tr.y, 1e-4)) << tr.solver;
    for (size_t k = 1; k < tr.records.size(); ++k) {
      const auto& r = tr.records[k];
      EXPECT_LE(*r.inner_dist_sq, *r.eps_k * (1 + 1e-9) + 1e-9) << tr.solver << " k=" << k;
    }
    EXPECT_EQ(t, tr.totals());
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, CatalystFinal, ::testing::Bool());

TEST(Catalyst, RoleSwapWhenYIsWeaker) {
  const SaddleProblem p = make_problem({4, 6, 5, 100, 100, 10, 1, 20});
  const SaddleReference ref = reference_saddle(p);
  const Vector x0 = Vector::Zero(6), y0 = Vector::Zero(5);
  CatalystOptions opt;
  opt.reference = &ref;
  const double eps0 = squared_distance(ref, x0, y0);
  const CatalystParams prm = catalyst_params(100, 100, 1, 10);
  int K = 1;
  while (prm.eps(eps0, K) > 1e-10) ++K;
  OracleTally t;
  const RunTrace tr = catalyst_dippa(p, x0, y0, K, eps0, t, opt);
  EXPECT_EQ(tr.param("swapped"), 1);
  EXPECT_EQ(tr.x.size(), 6);
  EXPECT_EQ(tr.y.size(), 5);
  EXPECT_TRUE(is_eps_saddle(ref, tr.x, tr.y, 1e-4));
  EXPECT_NEAR(tr.back().dist_sq_x, (tr.x - ref.x_star).squaredNorm(), 1e-15);
}

TEST(Catalyst, Errors) {
  const SaddleProblem p = make_problem({4, 3, 3, 100, 50, 1, 10, 2});
  OracleTally t;
  const Vector z = Vector::Zero(3);
  EXPECT_EQ(CodeOf([&] { catalyst_dippa(p, z, z, 3, 1, t); }), ErrorCode::kNotRescaled);
  const SaddleProblem q = make_problem({4, 3, 3, 100, 100, 1, 10, 2});
  EXPECT_EQ(CodeOf([&] { catalyst_dippa(q, z, z, 3, 0, t); }), ErrorCode::kBadC0);
  EXPECT_EQ(CodeOf([&] { catalyst_aipfb(q, z, z, 0, 1, t); }), ErrorCode::kBadArgument);
}

// Head-to-head in the regime ||A||^2 >= Lx muy + Ly mux, summed over seeds.
TEST(Catalyst, FewerOraclesThanAipfbInCouplingRegime) {
  for (double normA : {30.0, 50.0, 100.0}) {
    uint64_t catalyst = 0, plain = 0;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.dx = cfg.dy = 8;
      cfg.Lx = cfg.Ly = 100;
      cfg.mux = 1;
      cfg.muy = 10;
      cfg.normA = normA;
      cfg.eps = 1e-4;
      cfg.max_outer = 5000;
      cfg.solver = "catalyst-dippa";
      const ExperimentResult a = run_experiment(cfg);
      cfg.solver = "aipfb";
      const ExperimentResult b = run_experiment(cfg);
      ASSERT_TRUE(a.reached_eps && b.reached_eps);
      catalyst += a.trace.totals().total();
      plain += b.trace.totals().total();
    }
    EXPECT_LE(catalyst, plain) << "normA=" << normA;
  }
}

}  // namespace
}  // namespace saddle
