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


#ifndef SADDLE_SOLVERS_H_
#define SADDLE_SOLVERS_H_

#include <functional>

#include "saddle/agd.h"
#include "saddle/numerics.h"
#include "saddle/problem.h"
#include "saddle/trace.h"

namespace saddle {

struct RunOptions {
  // When set, distances to the saddle and theorem bounds are recorded.
  const SaddleReference* reference = nullptr;
  // Checked after every outer iteration; returning true ends the run.
  std::function<bool(int k, const Vector& x, const Vector& y)> stop;
  // Inner-solve certificates computed from exact prox solutions.
  bool certify_inner = true;
};

// Smallest count with floor(sqrt(kappa_eff) * ln(a)) + 1 steps, the AGD
// budget that shrinks an initial gap bound by the factor a. Returns 0 when
// a <= 1 (already met). Throws kBadArgument for a <= 0 or kappa_eff <= 0.
int agd_iterations_for(double kappa_eff, double log_argument);

// AGD on a quadratic; the trace carries the exact optimality gap.
RunTrace agd(const QuadraticFunction& f, const Vector& x0, int T, OracleTally& tally,
             const RunOptions& options = {});
// AGD on g(x) + h(y) for a decoupled problem (A is ignored).
RunTrace agd_decoupled(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T,
                       OracleTally& tally, const RunOptions& options = {});

struct ApfbParams {
  double gamma = 0;
  double sigma = 0;
  double theta = 0;
  // ||A|| after the zero-coupling floor 1e-14 sqrt(mux muy).
  double norm_eff = 0;
};

ApfbParams apfb_params(double mux, double muy, double normA);

RunTrace apfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T,
              OracleTally& tally, const RunOptions& options = {});

// Requires a balanced problem; throws kUnbalanced otherwise.
RunTrace dppa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
              OracleTally& tally, const RunOptions& options = {});

struct DippaSchedule {
  double eps = 0;
  double delta = 0;
};

DippaSchedule dippa_schedules(int k, double kappa, double L, double mu, double normA, double C0);

struct InnerCounts {
  int K1 = 0;
  int K2 = 0;
};

InnerCounts dippa_inner_counts(double kappa, double normA, double L, double mu, double rho,
                               double C);

struct DippaParams {
  double L = 0;
  double mu = 0;
  double kappa = 0;
  double normA = 0;
  double alpha = 0;
  double rho = 0;
  double C0 = 0;
  double C = 0;
  int K1 = 0;
  int K2 = 0;

  double eps(int k) const;
  double delta(int k) const;
};

DippaParams dippa_params(const SaddleProblem& p, double C0);

// C0 must bound ||x0 - x*||^2 + ||y0 - y*||^2 from above (kBadC0 if <= 0).
RunTrace dippa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K, double C0,
               OracleTally& tally, const RunOptions& options = {});

double aipfb_schedules(int k, double mux, double muy, double normA, double C0);

struct AipfbParams {
  ApfbParams apfb;
  double mux = 0;
  double muy = 0;
  double normA = 0;
  double kappa_tilde = 0;
  double theta = 0;  // from the true ||A||, used by the schedule
  double rho = 0;
  double C0 = 0;     // weighted: mux ||x0 - x*||^2 + muy ||y0 - y*||^2
  double C = 0;
  int K1 = 0;        // AGD steps on h_k
  int K2 = 0;        // AGD steps on g_k

  double eps(int k) const;
};

AipfbParams aipfb_params(const SaddleProblem& p, double C0);

// C0 must bound the weighted initial distance from above.
RunTrace aipfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T, double C0,
               OracleTally& tally, const RunOptions& options = {});

}  // namespace saddle

#endif  // SADDLE_SOLVERS_H_
