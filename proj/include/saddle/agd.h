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


#ifndef SADDLE_AGD_H_
#define SADDLE_AGD_H_

#include <cmath>
#include <concepts>

#include "saddle/numerics.h"
#include "saddle/problem.h"

namespace saddle {

// Anything AGD can run on: a counted gradient plus (L, mu) certificates.
template <class F>
concept SmoothObjective = requires(const F& f, const Vector& v, OracleTally& tally) {
  { f.gradient(v, tally) } -> std::convertible_to<Vector>;
  { f.smoothness() } -> std::convertible_to<double>;
  { f.strong_convexity() } -> std::convertible_to<double>;
};

// Objectives whose optimality gap can be computed exactly for certification.
template <class F>
concept CertifiableObjective = SmoothObjective<F> && requires(const F& f, const Vector& v) {
  { f.value(v) } -> std::convertible_to<double>;
  { f.minimizer() } -> std::convertible_to<Vector>;
};

struct AgdParams {
  double eta = 0;    // 1 / ell
  double theta = 0;  // (sqrt(kappa) - 1) / (sqrt(kappa) + 1)
  int T = 0;
};

inline AgdParams agd_params(double ell, double mu, int T) {
  const double root = std::sqrt(ell / mu);
  return {1.0 / ell, (root - 1.0) / (root + 1.0), T};
}

// T steps of Nesterov's method from x0. `visit(k, x_k)` runs after each step
// and may return true to stop early.
template <SmoothObjective F, class Visit>
Vector agd_run(const F& f, const Vector& x0, int T, OracleTally& tally, Visit&& visit) {
  const AgdParams prm = agd_params(f.smoothness(), f.strong_convexity(), T);
  Vector x = x0;
  Vector x_prev = x0;
  Vector x_tilde = x0;
  for (int k = 1; k <= T; ++k) {
    x = x_tilde - prm.eta * f.gradient(x_tilde, tally);
    x_tilde = x + prm.theta * (x - x_prev);
    x_prev = x;
    if (visit(k, x)) break;
  }
  return x;
}

template <SmoothObjective F>
Vector agd_minimize(const F& f, const Vector& x0, int T, OracleTally& tally) {
  return agd_run(f, x0, T, tally, [](int, const Vector&) { return false; });
}

// q(v) + 1/(2 gamma) ||v - center||^2. Each gradient costs one query of q.
struct ProximalObjective {
  const QuadraticFunction* q;
  double gamma;
  Vector center;

  Vector gradient(const Vector& v, OracleTally& tally) const {
    return q->gradient(v, tally) + (v - center) / gamma;
  }
  double smoothness() const { return q->smoothness() + 1.0 / gamma; }
  double strong_convexity() const { return q->strong_convexity() + 1.0 / gamma; }
  double value(const Vector& v) const {
    return q->value(v) + (v - center).squaredNorm() / (2.0 * gamma);
  }
};

// g(x) + h(y) on the stacked vector (x; y): a pure minimization embedding
// of a decoupled problem. Each gradient costs one query of g and one of h.
struct DecoupledObjective {
  const QuadraticFunction* g;
  const QuadraticFunction* h;

  int split() const { return g->dim(); }
  Vector gradient(const Vector& v, OracleTally& tally) const {
    Vector out(v.size());
    out.head(g->dim()) = g->gradient(v.head(g->dim()), tally);
    out.tail(h->dim()) = h->gradient(v.tail(h->dim()), tally);
    return out;
  }
  double smoothness() const { return std::max(g->smoothness(), h->smoothness()); }
  double strong_convexity() const {
    return std::min(g->strong_convexity(), h->strong_convexity());
  }
  double value(const Vector& v) const {
    return g->value(v.head(g->dim())) + h->value(v.tail(h->dim()));
  }
  Vector minimizer() const {
    Vector out(g->dim() + h->dim());
    out << g->minimizer(), h->minimizer();
    return out;
  }
};

}  // namespace saddle

#endif  // SADDLE_AGD_H_
