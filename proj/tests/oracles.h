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


// Independent oracles shared by the test binaries.

#ifndef SADDLE_TESTS_ORACLES_H_
#define SADDLE_TESTS_ORACLES_H_

#include <cmath>
#include <functional>
#include <optional>

#include "Eigen/Dense"
#include "Eigen/SVD"
#include "saddle/error.h"
#include "saddle/numerics.h"
#include "saddle/problem.h"

namespace saddle::testing {

// Largest singular value from a dense Jacobi SVD.
inline double SvdNorm(const DenseMatrix& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<DenseMatrix> svd(a);
  return svd.singularValues()(0);
}

// Saddle point from a full-pivot LU of the block system, no Schur
// complement involved.
inline std::pair<Vector, Vector> BlockSaddle(const SaddleProblem& p) {
  const int dx = p.dx(), dy = p.dy();
  DenseMatrix m(dx + dy, dx + dy);
  m.topLeftCorner(dx, dx) = p.g().hessian();
  m.topRightCorner(dx, dy) = p.coupling().matrix();
  m.bottomLeftCorner(dy, dx) = -p.coupling().matrix().transpose();
  m.bottomRightCorner(dy, dy) = p.h().hessian();
  Vector rhs(dx + dy);
  rhs << -p.g().linear(), -p.h().linear();
  const Vector sol = m.fullPivLu().solve(rhs);
  return {sol.head(dx), sol.tail(dy)};
}

inline Eigen::VectorXd Eigenvalues(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  return es.eigenvalues();
}

inline QuadraticFunction RandomQuadratic(uint64_t seed, int d, double mu, double L) {
  Rng rng(seed, 77);
  return QuadraticFunction(random_spd_with_spectrum(seed, d, mu, L), rng.NormalVector(d), L, mu);
}

inline Vector Vec(std::initializer_list<double> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline DenseMatrix Mat(int rows, int cols, std::initializer_list<double> row_major) {
  DenseMatrix out(rows, cols);
  auto it = row_major.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = *it++;
  return out;
}

// Code of the saddle::Error thrown by f, or nullopt if none is thrown.
inline std::optional<ErrorCode> CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double RelErr(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace saddle::testing

#endif  // SADDLE_TESTS_ORACLES_H_
