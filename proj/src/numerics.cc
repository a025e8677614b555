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

#include "saddle/numerics.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "Eigen/Eigenvalues"
#include "Eigen/QR"
#include "saddle/error.h"

namespace saddle {
namespace {

std::seed_seq MakeSeedSeq(uint64_t seed, uint64_t stream) {
  return std::seed_seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                       static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
                       0x5add1eu};
}

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t stream) {
  auto seq = MakeSeedSeq(seed, stream);
  return std::mt19937_64(seq);
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSPD: return "NotSPD";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kBadSpectrum: return "BadSpectrum";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kUnbalanced: return "Unbalanced";
    case ErrorCode::kBadC0: return "BadC0";
    case ErrorCode::kNotRescaled: return "NotRescaled";
    case ErrorCode::kBadOrdering: return "BadOrdering";
    case ErrorCode::kBadArgument: return "BadArgument";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Rng::Rng(uint64_t seed) : Rng(seed, 0) {}

Rng::Rng(uint64_t seed, uint64_t stream)
    : seed_(seed), engine_(MakeEngine(seed, stream)) {}

double Rng::Normal() { return normal_(engine_); }

double Rng::Uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Vector Rng::NormalVector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Normal();
  return v;
}

DenseMatrix Rng::NormalMatrix(int rows, int cols) {
  DenseMatrix m(rows, cols);
  // Fill row by row so the draw order matches the row-major description.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Normal();
  }
  return m;
}

uint64_t derive_seed(uint64_t seed, uint64_t tag) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

SpdFactor::SpdFactor(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "SPD matrix must be square");
  }
  if (!m.allFinite()) throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::kNotSPD, "matrix is not symmetric");
  }
  llt_.compute(m);
  if (llt_.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotSPD, "nonpositive pivot in Cholesky factorization");
  }
}

Vector SpdFactor::Solve(const Vector& b) const {
  if (b.size() != llt_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rhs has dimension " + std::to_string(b.size()) + ", expected " +
                    std::to_string(llt_.rows()));
  }
  return llt_.solve(b);
}

Vector solve_spd(const DenseMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_spd: rhs dimension mismatch");
  }
  return SpdFactor(m).Solve(b);
}

double spectral_norm(const DenseMatrix& a, double tol) {
  if (!a.allFinite()) throw Error(ErrorCode::kNonFinite, "spectral_norm: non-finite entries");
  if (!(tol > 0)) throw Error(ErrorCode::kBadArgument, "spectral_norm: tol must be positive");
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  // Work with the smaller Gram matrix.
  const bool use_rows = a.rows() < a.cols();
  const DenseMatrix gram =
      use_rows ? DenseMatrix(a * a.transpose()) : DenseMatrix(a.transpose() * a);
  const int d = static_cast<int>(gram.rows());

  Rng rng(0x9e3779b97f4a7c15ull);
  Vector v = rng.NormalVector(d);
  v.normalize();
  double rq = v.dot(gram * v);
  bool converged = false;
  const int cap = 10 * d;
  for (int it = 0; it < cap; ++it) {
    Vector w = gram * v;
    const double norm_w = w.norm();
    if (norm_w == 0.0) break;
    v = w / norm_w;
    const double next = v.dot(gram * v);
    const bool small_change = std::abs(next - rq) <= tol * std::abs(next);
    rq = next;
    if (small_change) {
      converged = true;
      break;
    }
  }
  if (converged) {
    // Refinement: one more step, and require an eigen-residual consistent
    // with tol so a stalled iterate on a clustered spectrum is not accepted.
    // A symmetric residual r puts an eigenvalue within r of the quotient.
    Vector w = gram * v;
    v = w / w.norm();
    rq = v.dot(gram * v);
    const double residual = (gram * v - rq * v).norm();
    converged = residual <= tol * rq;
  }
  if (!converged) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(gram, Eigen::EigenvaluesOnly);
    rq = eig.eigenvalues().maxCoeff();
  }
  return std::sqrt(std::max(rq, 0.0));
}

DenseMatrix random_spd_with_spectrum(uint64_t seed, int d, double mu, double L) {
  if (d < 1) throw Error(ErrorCode::kBadArgument, "dimension must be >= 1");
  if (!(mu > 0) || !(mu <= L) || !std::isfinite(L)) {
    throw Error(ErrorCode::kBadSpectrum, "need 0 < mu <= L");
  }
  if (d == 1) {
    if (mu != L) {
      throw Error(ErrorCode::kBadSpectrum, "a 1x1 matrix cannot have mu < L");
    }
    return DenseMatrix::Constant(1, 1, L);
  }
  Rng rng(seed, 1);
  Vector lambda(d);
  lambda(0) = mu;
  lambda(d - 1) = L;
  const double lo = std::log(mu), hi = std::log(L);
  for (int i = 1; i < d - 1; ++i) lambda(i) = std::exp(rng.Uniform(lo, hi));

  Eigen::HouseholderQR<DenseMatrix> qr(rng.NormalMatrix(d, d));
  DenseMatrix q = qr.householderQ();
  // Sign convention keeps Q a deterministic function of the Gaussian draw.
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  DenseMatrix m = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

DenseMatrix random_coupling(uint64_t seed, int dx, int dy, double s) {
  if (dx < 1 || dy < 1) throw Error(ErrorCode::kBadArgument, "coupling dims must be >= 1");
  if (!(s >= 0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kBadArgument, "coupling norm must be finite and >= 0");
  }
  if (s == 0.0) return DenseMatrix::Zero(dx, dy);
  Rng rng(seed, 2);
  DenseMatrix a = rng.NormalMatrix(dx, dy);
  const double sigma = spectral_norm(a, 1e-14);
  return a * (s / sigma);
}

}  // namespace saddle
