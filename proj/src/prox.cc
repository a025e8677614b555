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

#include "saddle/prox.h"

#include <cmath>
#include <string>

#include "saddle/error.h"

namespace saddle {
namespace {

DenseMatrix ShiftedHessian(const QuadraticFunction& q, double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kBadArgument, "prox step must be positive and finite");
  }
  DenseMatrix m = q.hessian();
  m.diagonal().array() += 1.0 / gamma;
  return m;
}

DenseMatrix NormalMatrix(const DenseMatrix& a, double alpha, bool y_side) {
  const double a2 = alpha * alpha;
  DenseMatrix m = y_side ? DenseMatrix(a2 * a.transpose() * a) : DenseMatrix(a2 * a * a.transpose());
  m.diagonal().array() += 1.0;
  return 0.5 * (m + m.transpose());
}

}  // namespace

QuadraticProx::QuadraticProx(const QuadraticFunction& q, double gamma)
    : gamma_(gamma),
      mu_(q.strong_convexity()),
      linear_(q.linear()),
      factor_(ShiftedHessian(q, gamma)) {}

Vector QuadraticProx::operator()(const Vector& z) const {
  if (z.size() != linear_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "prox point dimension mismatch");
  }
  return factor_.Solve(z / gamma_ - linear_);
}

Vector prox_quadratic(const QuadraticFunction& q, double gamma, const Vector& z) {
  return QuadraticProx(q, gamma)(z);
}

std::pair<Vector, Vector> prox_separable(double alpha, const QuadraticFunction& g,
                                         const QuadraticFunction& h, const Vector& z,
                                         const Vector& w) {
  return {prox_quadratic(g, alpha, z), prox_quadratic(h, alpha, w)};
}

SkewProx::SkewProx(const CouplingOperator& a, double alpha)
    : a_(a.matrix()),
      alpha_(alpha),
      y_side_(a.cols() <= a.rows()),
      factor_(NormalMatrix(a.matrix(), alpha, a.cols() <= a.rows())) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kBadArgument, "skew prox step must be >= 0");
  }
}

std::pair<Vector, Vector> SkewProx::operator()(const Vector& u, const Vector& v) const {
  const DenseMatrix& a = a_;
  if (u.size() != a.rows() || v.size() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "skew prox: point dimension mismatch");
  }
  if (alpha_ == 0) return {u, v};
  if (y_side_) {
    Vector y = factor_.Solve(v + alpha_ * (a.transpose() * u));
    Vector x = u - alpha_ * (a * y);
    return {std::move(x), std::move(y)};
  }
  Vector x = factor_.Solve(u - alpha_ * (a * v));
  Vector y = v + alpha_ * (a.transpose() * x);
  return {std::move(x), std::move(y)};
}

std::pair<Vector, Vector> prox_skew(double alpha, const CouplingOperator& a, const Vector& u,
                                    const Vector& v) {
  return SkewProx(a, alpha)(u, v);
}

}  // namespace saddle
