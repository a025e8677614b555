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

#ifndef SADDLE_NUMERICS_H_
#define SADDLE_NUMERICS_H_

#include <cstdint>
#include <random>

#include "Eigen/Cholesky"
#include "Eigen/Core"

namespace saddle {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

// Seed-deterministic generator. Streams derived with `Fork` are independent
// of the order in which they are requested.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  Rng(uint64_t seed, uint64_t stream);

  double Normal();
  double Uniform(double lo, double hi);
  Vector NormalVector(int n);
  DenseMatrix NormalMatrix(int rows, int cols);
  Rng Fork(uint64_t stream) const { return Rng(seed_, stream); }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// Cholesky factor of a symmetric positive definite matrix. Construction
// validates symmetry (1e-10 relative) and throws kNotSPD on a nonpositive
// pivot.
class SpdFactor {
 public:
  explicit SpdFactor(const DenseMatrix& m);

  Vector Solve(const Vector& b) const;
  int dim() const { return static_cast<int>(llt_.rows()); }

 private:
  Eigen::LLT<DenseMatrix> llt_;
};

Vector solve_spd(const DenseMatrix& m, const Vector& b);

// Largest singular value by power iteration on A^T A (or A A^T, whichever is
// smaller), stopped when successive Rayleigh quotients agree to `tol`.
double spectral_norm(const DenseMatrix& a, double tol = 1e-12);

// Q diag(lambda) Q^T with lambda_min = mu, lambda_max = L exactly and the
// interior eigenvalues log-uniform in [mu, L].
DenseMatrix random_spd_with_spectrum(uint64_t seed, int d, double mu, double L);

// Gaussian dx-by-dy matrix rescaled to spectral norm s.
DenseMatrix random_coupling(uint64_t seed, int dx, int dy, double s);

// Splitmix-style mixing for deriving sub-seeds from a user seed.
uint64_t derive_seed(uint64_t seed, uint64_t tag);

bool all_finite(const DenseMatrix& m);
bool all_finite(const Vector& v);

}  // namespace saddle

#endif  // SADDLE_NUMERICS_H_
