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

#ifndef SADDLE_PROX_H_
#define SADDLE_PROX_H_

#include <utility>

#include "saddle/numerics.h"
#include "saddle/problem.h"

namespace saddle {

// argmin_u q(u) + 1/(2 gamma) ||u - z||^2 for a fixed (q, gamma) pair; the
// factorization of H + I/gamma is built once.
class QuadraticProx {
 public:
  QuadraticProx(const QuadraticFunction& q, double gamma);

  Vector operator()(const Vector& z) const;
  double step() const { return gamma_; }
  double strong_convexity() const { return mu_; }

 private:
  double gamma_;
  double mu_;
  Vector linear_;
  SpdFactor factor_;
};

Vector prox_quadratic(const QuadraticFunction& q, double gamma, const Vector& z);

// Prox of alpha (g - h) at (z, w): the min and max parts decouple into
// (prox_{alpha g}(z), prox_{alpha h}(w)).
std::pair<Vector, Vector> prox_separable(double alpha, const QuadraticFunction& g,
                                         const QuadraticFunction& h, const Vector& z,
                                         const Vector& w);

// Resolvent of the bilinear term: the unique (x, y) with
//   x + alpha A y = u,   y - alpha A^T x = v.
// Solved through the normal system of the smaller side.
class SkewProx {
 public:
  SkewProx(const CouplingOperator& a, double alpha);

  std::pair<Vector, Vector> operator()(const Vector& u, const Vector& v) const;
  double alpha() const { return alpha_; }

 private:
  DenseMatrix a_;
  double alpha_;
  bool y_side_;
  SpdFactor factor_;
};

std::pair<Vector, Vector> prox_skew(double alpha, const CouplingOperator& a, const Vector& u,
                                    const Vector& v);

// (c/2) ||u - center||^2; its prox is closed form.
struct IsotropicQuadratic {
  double curvature;
  Vector center;

  double strong_convexity() const { return curvature; }
  Vector prox(double gamma, const Vector& z) const {
    return (curvature * center + z / gamma) / (curvature + 1.0 / gamma);
  }
};

}  // namespace saddle

#endif  // SADDLE_PROX_H_
