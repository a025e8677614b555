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

#include "saddle/problem.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "Eigen/Eigenvalues"
#include "json.hpp"
#include "saddle/error.h"

namespace saddle {
namespace {

constexpr double kSpectrumRelTol = 1e-9;

void CheckDim(const char* what, Eigen::Index got, Eigen::Index want) {
  if (got != want) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": got dimension " +
                                                   std::to_string(got) + ", expected " +
                                                   std::to_string(want));
  }
}

bool RelClose(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

QuadraticFunction::QuadraticFunction(DenseMatrix hessian, Vector linear, double smoothness,
                                     double strong_convexity, Oracle counter)
    : hessian_(std::move(hessian)),
      linear_(std::move(linear)),
      smoothness_(smoothness),
      strong_convexity_(strong_convexity),
      counter_(counter) {
  if (hessian_.rows() != hessian_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "Hessian must be square");
  }
  CheckDim("linear term", linear_.size(), hessian_.rows());
  if (!hessian_.allFinite() || !linear_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "quadratic has non-finite entries");
  }
  if (!(strong_convexity_ > 0) || !(strong_convexity_ <= smoothness_) ||
      !std::isfinite(smoothness_)) {
    throw Error(ErrorCode::kBadSpectrum, "certificates must satisfy 0 < mu <= L");
  }
  const double scale = std::max(1.0, hessian_.cwiseAbs().maxCoeff());
  if ((hessian_ - hessian_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::kNotSPD, "Hessian is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(hessian_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo < strong_convexity_ * (1 - kSpectrumRelTol) ||
      hi > smoothness_ * (1 + kSpectrumRelTol)) {
    throw Error(ErrorCode::kBadSpectrum,
                "Hessian spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] violates certificates [" + std::to_string(strong_convexity_) + ", " +
                    std::to_string(smoothness_) + "]");
  }
}

QuadraticFunction::QuadraticFunction(Trusted, DenseMatrix hessian, Vector linear,
                                     double smoothness, double strong_convexity,
                                     Oracle counter)
    : hessian_(std::move(hessian)),
      linear_(std::move(linear)),
      smoothness_(smoothness),
      strong_convexity_(strong_convexity),
      counter_(counter) {}

double QuadraticFunction::value(const Vector& v) const {
  CheckDim("value", v.size(), dim());
  return 0.5 * v.dot(hessian_ * v) + linear_.dot(v);
}

Vector QuadraticFunction::gradient(const Vector& v, OracleTally& tally) const {
  CheckDim("gradient", v.size(), dim());
  tally.Record(counter_);
  return hessian_ * v + linear_;
}

Vector QuadraticFunction::gradient_uncounted(const Vector& v) const {
  CheckDim("gradient", v.size(), dim());
  return hessian_ * v + linear_;
}

Vector QuadraticFunction::minimizer() const { return -solve_spd(hessian_, linear_); }

QuadraticFunction QuadraticFunction::with_counter(Oracle counter) const {
  return QuadraticFunction(Trusted{}, hessian_, linear_, smoothness_, strong_convexity_,
                           counter);
}

QuadraticFunction QuadraticFunction::shifted(double beta, const Vector& center) const {
  if (!(beta >= 0)) throw Error(ErrorCode::kBadArgument, "envelope weight must be >= 0");
  CheckDim("envelope center", center.size(), dim());
  if (beta == 0) return *this;
  DenseMatrix h = hessian_;
  h.diagonal().array() += beta;
  return QuadraticFunction(Trusted{}, std::move(h), linear_ - beta * center,
                           smoothness_ + beta, strong_convexity_ + beta, counter_);
}

QuadraticFunction QuadraticFunction::composed_with_scale(double s) const {
  if (!(s > 0)) throw Error(ErrorCode::kBadArgument, "scale must be positive");
  if (s == 1) return *this;
  return QuadraticFunction(Trusted{}, (s * s) * hessian_, s * linear_, s * s * smoothness_,
                           s * s * strong_convexity_, counter_);
}

CouplingOperator::CouplingOperator(DenseMatrix a) : a_(std::move(a)) {
  if (!a_.allFinite()) throw Error(ErrorCode::kNonFinite, "coupling has non-finite entries");
  norm_ = spectral_norm(a_);
}

CouplingOperator::CouplingOperator(DenseMatrix a, double norm, bool counters_swapped)
    : a_(std::move(a)), norm_(norm), counters_swapped_(counters_swapped) {}

Vector CouplingOperator::apply(Direction direction, const Vector& v, OracleTally& tally) const {
  const bool forward = direction == Direction::kForward;
  tally.Record(forward != counters_swapped_ ? Oracle::kAy : Oracle::kATx);
  return apply_uncounted(direction, v);
}

Vector CouplingOperator::apply_uncounted(Direction direction, const Vector& v) const {
  if (direction == Direction::kForward) {
    CheckDim("A v", v.size(), a_.cols());
    return a_ * v;
  }
  CheckDim("A^T v", v.size(), a_.rows());
  return a_.transpose() * v;
}

CouplingOperator CouplingOperator::scaled(double s) const {
  return CouplingOperator(s * a_, std::abs(s) * norm_, counters_swapped_);
}

CouplingOperator CouplingOperator::swapped() const {
  return CouplingOperator(-a_.transpose(), norm_, !counters_swapped_);
}

SaddleProblem::SaddleProblem(QuadraticFunction g, QuadraticFunction h, CouplingOperator a)
    : SaddleProblem(Unstamped{}, g.with_counter(Oracle::kGradG),
                    h.with_counter(Oracle::kGradH), std::move(a)) {}

SaddleProblem::SaddleProblem(Unstamped, QuadraticFunction g, QuadraticFunction h,
                             CouplingOperator a)
    : g_(std::move(g)), h_(std::move(h)), a_(std::move(a)) {
  CheckDim("coupling rows", a_.rows(), g_.dim());
  CheckDim("coupling cols", a_.cols(), h_.dim());
}

double SaddleProblem::coupling_condition() const {
  return a_.norm() / std::sqrt(g_.strong_convexity() * h_.strong_convexity());
}

double SaddleProblem::value(const Vector& x, const Vector& y) const {
  return g_.value(x) + x.dot(a_.apply_uncounted(Direction::kForward, y)) - h_.value(y);
}

bool SaddleProblem::balanced(double rel_tol) const {
  return RelClose(g_.smoothness(), h_.smoothness(), rel_tol) &&
         RelClose(g_.strong_convexity(), h_.strong_convexity(), rel_tol);
}

SaddleProblem SaddleProblem::swapped() const {
  return SaddleProblem(Unstamped{}, h_, g_, a_.swapped());
}

SaddleProblem SaddleProblem::with_g(QuadraticFunction g) const {
  return SaddleProblem(Unstamped{}, std::move(g), h_, a_);
}

SaddleProblem SaddleProblem::with_h(QuadraticFunction h) const {
  return SaddleProblem(Unstamped{}, g_, std::move(h), a_);
}

SaddleProblem SaddleProblem::with_coupling(CouplingOperator a) const {
  return SaddleProblem(Unstamped{}, g_, h_, std::move(a));
}

double stationarity_residual(const SaddleProblem& p, const Vector& x, const Vector& y) {
  const auto& a = p.coupling();
  return (p.g().gradient_uncounted(x) + a.apply_uncounted(Direction::kForward, y)).norm() +
         (p.h().gradient_uncounted(y) - a.apply_uncounted(Direction::kAdjoint, x)).norm();
}

SaddleReference reference_saddle(const SaddleProblem& p) {
  const DenseMatrix& hg = p.g().hessian();
  const DenseMatrix& hh = p.h().hessian();
  const DenseMatrix& a = p.coupling().matrix();
  const Vector& cg = p.g().linear();
  const Vector& ch = p.h().linear();

  // Eliminate x: (H_h + A^T H_g^{-1} A) y = -c_h - A^T H_g^{-1} c_g.
  auto solve = [&](const Vector& rg, const Vector& rh) {
    try {
      const SpdFactor fg(hg);
      const DenseMatrix hg_inv_a = Eigen::LLT<DenseMatrix>(hg).solve(a);
      DenseMatrix schur = hh + a.transpose() * hg_inv_a;
      schur = 0.5 * (schur + schur.transpose());
      const Vector y = solve_spd(schur, rh + a.transpose() * fg.Solve(rg));
      const Vector x = fg.Solve(rg - a * y);
      return std::make_pair(x, y);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSingularSystem, std::string("stationarity system: ") + e.what());
    }
  };
  auto [x, y] = solve(-cg, -ch);
  // One step of iterative refinement on the full block residual.
  const Vector rg = -cg - (hg * x + a * y);
  const Vector rh = -ch - (-a.transpose() * x + hh * y);
  auto [dx, dy] = solve(rg, rh);
  x += dx;
  y += dy;

  SaddleReference ref{x, y, stationarity_residual(p, x, y)};
  if (!(ref.residual <= 1e-9 * (1 + x.norm() + y.norm()))) {
    throw Error(ErrorCode::kSingularSystem,
                "stationarity residual " + std::to_string(ref.residual) + " too large");
  }
  return ref;
}

RescaledProblem rescale_to_equal_smoothness(const SaddleProblem& p) {
  const double s = std::sqrt(p.g().smoothness() / p.h().smoothness());
  if (s == 1.0) return {p, 1.0};
  return {p.with_h(p.h().composed_with_scale(s)).with_coupling(p.coupling().scaled(s)), s};
}

double squared_distance(const SaddleReference& ref, const Vector& x, const Vector& y) {
  return (x - ref.x_star).squaredNorm() + (y - ref.y_star).squaredNorm();
}

bool is_eps_saddle(const SaddleReference& ref, const Vector& x, const Vector& y, double eps) {
  return (x - ref.x_star).norm() + (y - ref.y_star).norm() <= eps;
}

void validate(const ProblemSpec& spec) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::kConfig, "field '" + field + "': " + why);
  };
  if (spec.dx < 1) fail("dx", "must be >= 1");
  if (spec.dy < 1) fail("dy", "must be >= 1");
  if (!(spec.mux > 0) || !std::isfinite(spec.mux)) fail("mux", "must be > 0");
  if (!(spec.muy > 0) || !std::isfinite(spec.muy)) fail("muy", "must be > 0");
  if (!(spec.Lx >= spec.mux) || !std::isfinite(spec.Lx)) fail("Lx", "must be >= mux");
  if (!(spec.Ly >= spec.muy) || !std::isfinite(spec.Ly)) fail("Ly", "must be >= muy");
  if (!(spec.normA >= 0) || !std::isfinite(spec.normA)) fail("normA", "must be >= 0");
  if (spec.dx == 1 && spec.Lx != spec.mux) fail("Lx", "dx = 1 requires Lx = mux");
  if (spec.dy == 1 && spec.Ly != spec.muy) fail("Ly", "dy = 1 requires Ly = muy");
}

SaddleProblem make_problem(const ProblemSpec& spec) {
  validate(spec);
  Rng linear_rng(derive_seed(spec.seed, 4));
  QuadraticFunction g(random_spd_with_spectrum(derive_seed(spec.seed, 1), spec.dx, spec.mux,
                                               spec.Lx),
                      linear_rng.Fork(1).NormalVector(spec.dx), spec.Lx, spec.mux);
  QuadraticFunction h(random_spd_with_spectrum(derive_seed(spec.seed, 2), spec.dy, spec.muy,
                                               spec.Ly),
                      linear_rng.Fork(2).NormalVector(spec.dy), spec.Ly, spec.muy);
  CouplingOperator a(
      random_coupling(derive_seed(spec.seed, 3), spec.dx, spec.dy, spec.normA));
  return SaddleProblem(std::move(g), std::move(h), std::move(a));
}

std::string to_json(const ProblemSpec& spec) {
  nlohmann::ordered_json j;
  j["seed"] = spec.seed;
  j["dx"] = spec.dx;
  j["dy"] = spec.dy;
  j["Lx"] = spec.Lx;
  j["Ly"] = spec.Ly;
  j["mux"] = spec.mux;
  j["muy"] = spec.muy;
  j["normA"] = spec.normA;
  return j.dump(2);
}

ProblemSpec problem_spec_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "problem must be a JSON object");
  static const char* kKeys[] = {"seed", "dx", "dy", "Lx", "Ly", "mux", "muy", "normA"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
    }
  }
  ProblemSpec spec;
  try {
    spec.seed = j.at("seed").get<uint64_t>();
    spec.dx = j.at("dx").get<int>();
    spec.dy = j.at("dy").get<int>();
    spec.Lx = j.at("Lx").get<double>();
    spec.Ly = j.at("Ly").get<double>();
    spec.mux = j.at("mux").get<double>();
    spec.muy = j.at("muy").get<double>();
    spec.normA = j.at("normA").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("problem JSON: ") + e.what());
  }
  validate(spec);
  return spec;
}

}  // namespace saddle
