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


#ifndef SADDLE_CATALYST_H_
#define SADDLE_CATALYST_H_

#include "saddle/numerics.h"
#include "saddle/problem.h"
#include "saddle/solvers.h"
#include "saddle/trace.h"

namespace saddle {

struct CatalystParams {
  double beta = 0;
  double q = 1;
  double theta = 0;
  // eps_k = eps0 (1 - 0.9 sqrt(q))^k, in squared distance.
  double ratio = 0;

  double eps(double eps0, int k) const;
};

// Envelope weight that balances the problem. Requires Lx = Ly (kNotRescaled)
// and mux <= muy < Lx (kBadOrdering). mux = muy gives beta = 0.
CatalystParams catalyst_params(double Lx, double Ly, double mux, double muy);

// f(x, y) + beta/2 ||x - center||^2.
SaddleProblem catalyst_envelope(const SaddleProblem& p, double beta, const Vector& center);

// f_k(s x, y) with s = sqrt(Lx / (Lx + beta)). Here `scale` maps the x side:
// original x = scale * rescaled x.
RescaledProblem rescale_envelope(const SaddleProblem& p_k, double Lx, double beta);

struct CatalystOptions : RunOptions {
  // Harness mode: each subproblem's C0 is its exact initial squared
  // distance. Otherwise a triangle-inequality bound is used.
  bool exact_subproblem_c0 = true;
};

// K outer iterations; eps0 seeds the tolerance schedule and should bound
// the initial squared distance. When beta = 0 this is one inner call with
// K iterations and C0 = eps0.
RunTrace catalyst_dippa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
                        double eps0, OracleTally& tally, const CatalystOptions& options = {});
RunTrace catalyst_aipfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
                        double eps0, OracleTally& tally, const CatalystOptions& options = {});

}  // namespace saddle

#endif  // SADDLE_CATALYST_H_
