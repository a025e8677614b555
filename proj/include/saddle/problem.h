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

#ifndef SADDLE_PROBLEM_H_
#define SADDLE_PROBLEM_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "saddle/numerics.h"

namespace saddle {

// The four components returned by one first-order oracle query.
enum class Oracle { kGradG, kGradH, kAy, kATx };

struct OracleTally {
  uint64_t n_grad_g = 0;
  uint64_t n_grad_h = 0;
  uint64_t n_Ay = 0;
  uint64_t n_ATx = 0;

  void Record(Oracle oracle) {
    switch (oracle) {
      case Oracle::kGradG: ++n_grad_g; break;
      case Oracle::kGradH: ++n_grad_h; break;
      case Oracle::kAy: ++n_Ay; break;
      case Oracle::kATx: ++n_ATx; break;
    }
  }
  uint64_t total() const { return n_grad_g + n_grad_h + n_Ay + n_ATx; }

  OracleTally& operator+=(const OracleTally& o) {
    n_grad_g += o.n_grad_g;
    n_grad_h += o.n_grad_h;
    n_Ay += o.n_Ay;
    n_ATx += o.n_ATx;
    return *this;
  }
  friend OracleTally operator-(OracleTally a, const OracleTally& b) {
    a.n_grad_g -= b.n_grad_g;
    a.n_grad_h -= b.n_grad_h;
    a.n_Ay -= b.n_Ay;
    a.n_ATx -= b.n_ATx;
    return a;
  }
  friend bool operator==(const OracleTally&, const OracleTally&) = default;
};

// phi(v) = 1/2 v^T H v + c^T v with certified smoothness L and strong
// convexity mu: the spectrum of H lies in [mu, L].
class QuadraticFunction {
 public:
  QuadraticFunction(DenseMatrix hessian, Vector linear, double smoothness,
                    double strong_convexity, Oracle counter = Oracle::kGradG);

  int dim() const { return static_cast<int>(linear_.size()); }
  const DenseMatrix& hessian() const { return hessian_; }
  const Vector& linear() const { return linear_; }
  double smoothness() const { return smoothness_; }
  double strong_convexity() const { return strong_convexity_; }
  double condition_number() const { return smoothness_ / strong_convexity_; }
  Oracle counter() const { return counter_; }

  double value(const Vector& v) const;
  // Counted oracle call: H v + c.
  Vector gradient(const Vector& v, OracleTally& tally) const;
  // Same arithmetic without touching a tally; reserved for verification.
  Vector gradient_uncounted(const Vector& v) const;
  Vector minimizer() const;

  QuadraticFunction with_counter(Oracle counter) const;
  // phi(v) + beta/2 ||v - center||^2 (up to a constant), certificates
  // shifted by beta.
  QuadraticFunction shifted(double beta, const Vector& center) const;
  // v -> phi(s v); certificates scale by s^2.
  QuadraticFunction composed_with_scale(double s) const;

 private:
  struct Trusted {};
  QuadraticFunction(Trusted, DenseMatrix hessian, Vector linear, double smoothness,
                    double strong_convexity, Oracle counter);

  DenseMatrix hessian_;
  Vector linear_;
  double smoothness_;
  double strong_convexity_;
  Oracle counter_;
};

enum class Direction { kForward, kAdjoint };

// Dense coupling matrix with its cached spectral norm.
class CouplingOperator {
 public:
  explicit CouplingOperator(DenseMatrix a);

  const DenseMatrix& matrix() const { return a_; }
  double norm() const { return norm_; }
  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }

  // Forward computes A v (an "Ay" query), adjoint A^T v (an "A^T x" query).
  Vector apply(Direction direction, const Vector& v, OracleTally& tally) const;
  Vector forward(const Vector& v, OracleTally& tally) const {
    return apply(Direction::kForward, v, tally);
  }
  Vector adjoint(const Vector& v, OracleTally& tally) const {
    return apply(Direction::kAdjoint, v, tally);
  }
  Vector apply_uncounted(Direction direction, const Vector& v) const;

  CouplingOperator scaled(double s) const;
  // -A^T, with the forward/adjoint counters exchanged so that queries are
  // still attributed to the original oracle components.
  CouplingOperator swapped() const;

 private:
  CouplingOperator(DenseMatrix a, double norm, bool counters_swapped);

  DenseMatrix a_;
  double norm_;
  bool counters_swapped_ = false;
};

// f(x, y) = g(x) + <x, A y> - h(y).
class SaddleProblem {
 public:
  SaddleProblem(QuadraticFunction g, QuadraticFunction h, CouplingOperator a);

  const QuadraticFunction& g() const { return g_; }
  const QuadraticFunction& h() const { return h_; }
  const CouplingOperator& coupling() const { return a_; }
  int dx() const { return g_.dim(); }
  int dy() const { return h_.dim(); }
  double kappa_x() const { return g_.condition_number(); }
  double kappa_y() const { return h_.condition_number(); }
  // ||A|| / sqrt(mu_x mu_y).
  double coupling_condition() const;

  double value(const Vector& x, const Vector& y) const;
  // kappa_x = kappa_y and matching certificates on both sides.
  bool balanced(double rel_tol = 1e-12) const;

  // min_y max_x h(y) - <x, A y> - g(x): same saddle with the roles of x and y
  // exchanged. Oracle attribution is preserved.
  SaddleProblem swapped() const;
  // Replaces g, keeping its oracle attribution as given.
  SaddleProblem with_g(QuadraticFunction g) const;
  SaddleProblem with_h(QuadraticFunction h) const;
  SaddleProblem with_coupling(CouplingOperator a) const;

 private:
  struct Unstamped {};
  SaddleProblem(Unstamped, QuadraticFunction g, QuadraticFunction h, CouplingOperator a);

  QuadraticFunction g_;
  QuadraticFunction h_;
  CouplingOperator a_;
};

struct SaddleReference {
  Vector x_star;
  Vector y_star;
  double residual = 0;
};

// Exact saddle point from the stationarity system
//   H_g x + A y = -c_g,   -A^T x + H_h y = -c_h.
SaddleReference reference_saddle(const SaddleProblem& p);

// ||grad g(x) + A y|| + ||grad h(y) - A^T x||.
double stationarity_residual(const SaddleProblem& p, const Vector& x, const Vector& y);

struct RescaledProblem {
  SaddleProblem problem;
  double scale;  // original y = scale * rescaled y
};

// f_hat(x, y) = f(x, s y) with s = sqrt(Lx / Ly), giving equal smoothness.
RescaledProblem rescale_to_equal_smoothness(const SaddleProblem& p);

// ||x - x*|| + ||y - y*|| <= eps.
bool is_eps_saddle(const SaddleReference& ref, const Vector& x, const Vector& y, double eps);

double squared_distance(const SaddleReference& ref, const Vector& x, const Vector& y);

// Seed-deterministic description of a synthetic instance.
struct ProblemSpec {
  uint64_t seed = 0;
  int dx = 1;
  int dy = 1;
  double Lx = 1;
  double Ly = 1;
  double mux = 1;
  double muy = 1;
  double normA = 0;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

void validate(const ProblemSpec& spec);
SaddleProblem make_problem(const ProblemSpec& spec);
std::string to_json(const ProblemSpec& spec);
ProblemSpec problem_spec_from_json(std::string_view text);

}  // namespace saddle

#endif  // SADDLE_PROBLEM_H_
