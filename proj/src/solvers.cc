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


#include "saddle/solvers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "saddle/error.h"
#include "saddle/prox.h"

namespace saddle {
namespace {

void RequirePositiveCount(int n, const char* name) {
  if (n < 1) {
    throw Error(ErrorCode::kBadArgument, std::string(name) + " must be at least 1");
  }
}

void RequireC0(double c0) {
  if (!(c0 > 0) || !std::isfinite(c0)) {
    throw Error(ErrorCode::kBadC0, "C0 must be positive and finite, got " + format_double(c0));
  }
}

void RequireBalanced(const SaddleProblem& p) {
  if (!p.balanced()) {
    throw Error(ErrorCode::kUnbalanced,
                "certificates differ across sides: (" + format_double(p.g().smoothness()) + ", " +
                    format_double(p.g().strong_convexity()) + ") vs (" +
                    format_double(p.h().smoothness()) + ", " +
                    format_double(p.h().strong_convexity()) + ")");
  }
}

void RequireStart(const SaddleProblem& p, const Vector& x0, const Vector& y0) {
  if (x0.size() != p.dx() || y0.size() != p.dy()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point does not match problem dimensions");
  }
}

// 1/2 e^T (H + I/gamma) e: the exact gap of q + 1/(2 gamma)||. - c||^2 at
// a point whose offset from the minimizer is e.
double ProximalGap(const QuadraticFunction& q, double gamma, const Vector& e) {
  return 0.5 * (e.dot(q.hessian() * e) + e.squaredNorm() / gamma);
}

TraceRecord MakeRecord(int k, const Vector& x, const Vector& y, const OracleTally& tally,
                       const RunOptions& options) {
  TraceRecord r;
  r.k = k;
  r.x = x;
  r.y = y;
  r.tally = tally;
  if (options.reference) {
    r.dist_sq_x = (x - options.reference->x_star).squaredNorm();
    r.dist_sq_y = (y - options.reference->y_star).squaredNorm();
  }
  return r;
}

bool ShouldStop(const RunOptions& options, int k, const Vector& x, const Vector& y) {
  return options.stop && options.stop(k, x, y);
}

void Finish(RunTrace& trace) {
  trace.x = trace.records.back().x;
  trace.y = trace.records.back().y;
}

// Shared AGD driver: `split` separates the stacked vector into (x, y) for
// the trace, `gap` returns the exact optimality gap of an iterate.
template <SmoothObjective F, class Gap>
RunTrace AgdTrace(const F& f, const Vector& v0, const Vector& v_star, int split, int T,
                  OracleTally& tally, const RunOptions& options, Gap&& gap,
                  const char* solver) {
  RequirePositiveCount(T, "T");
  const double ell = f.smoothness();
  const double mu = f.strong_convexity();
  const double kappa = ell / mu;
  const double d0 = (v0 - v_star).squaredNorm();
  const OracleTally start = tally;

  RunTrace trace;
  trace.solver = solver;
  trace.has_reference = true;
  trace.params = {{"ell", ell}, {"mu", mu}, {"T", T}};

  auto record = [&](int k, const Vector& v) {
    TraceRecord r;
    r.k = k;
    r.x = v.head(split);
    r.y = v.tail(v.size() - split);
    r.dist_sq_x = (r.x - v_star.head(split)).squaredNorm();
    r.dist_sq_y = (r.y - v_star.tail(v.size() - split)).squaredNorm();
    r.tally = tally - start;
    r.bound_lhs = gap(v);
    r.bound_value = 0.5 * (ell + mu) * d0 * std::exp(-k / std::sqrt(kappa));
    trace.records.push_back(std::move(r));
    const auto& back = trace.records.back();
    return ShouldStop(options, k, back.x, back.y);
  };
  if (!record(0, v0)) agd_run(f, v0, T, tally, record);
  Finish(trace);
  return trace;
}

}  // namespace

int agd_iterations_for(double kappa_eff, double log_argument) {
  if (!(kappa_eff > 0) || !std::isfinite(kappa_eff)) {
    throw Error(ErrorCode::kBadArgument, "condition number must be positive and finite");
  }
  if (!(log_argument > 0) || !std::isfinite(log_argument)) {
    throw Error(ErrorCode::kBadArgument, "log argument must be positive and finite");
  }
  if (log_argument <= 1) return 0;
  return static_cast<int>(std::floor(std::sqrt(kappa_eff) * std::log(log_argument))) + 1;
}

RunTrace agd(const QuadraticFunction& f, const Vector& x0, int T, OracleTally& tally,
             const RunOptions& options) {
  if (x0.size() != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point does not match dimension");
  }
  const Vector x_star = f.minimizer();
  auto gap = [&](const Vector& v) {
    const Vector e = v - x_star;
    return 0.5 * e.dot(f.hessian() * e);
  };
  return AgdTrace(f, x0, x_star, f.dim(), T, tally, options, gap, "agd");
}

RunTrace agd_decoupled(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T,
                       OracleTally& tally, const RunOptions& options) {
  RequireStart(p, x0, y0);
  const DecoupledObjective f{&p.g(), &p.h()};
  const Vector v_star = f.minimizer();
  Vector v0(p.dx() + p.dy());
  v0 << x0, y0;
  auto gap = [&](const Vector& v) {
    const Vector e = v - v_star;
    const auto ex = e.head(p.dx());
    const auto ey = e.tail(p.dy());
    return 0.5 * (ex.dot(p.g().hessian() * ex) + ey.dot(p.h().hessian() * ey));
  };
  return AgdTrace(f, v0, v_star, p.dx(), T, tally, options, gap, "agd");
}

ApfbParams apfb_params(double mux, double muy, double normA) {
  const double root = std::sqrt(mux * muy);
  const double norm = std::max(normA, 1e-14 * root);
  return {std::sqrt(muy / mux) / norm, std::sqrt(mux / muy) / norm, norm / (root + norm), norm};
}

RunTrace apfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T,
              OracleTally& tally, const RunOptions& options) {
  RequirePositiveCount(T, "T");
  RequireStart(p, x0, y0);
  const double mux = p.g().strong_convexity();
  const double muy = p.h().strong_convexity();
  const ApfbParams prm = apfb_params(mux, muy, p.coupling().norm());
  const QuadraticProx prox_g(p.g(), prm.gamma);
  const QuadraticProx prox_h(p.h(), prm.sigma);
  const CouplingOperator& a = p.coupling();
  const OracleTally start = tally;

  RunTrace trace;
  trace.solver = "apfb";
  trace.has_reference = options.reference != nullptr;
  trace.params = {{"mux", mux},           {"muy", muy},         {"normA", a.norm()},
                  {"normA_eff", prm.norm_eff}, {"gamma", prm.gamma}, {"sigma", prm.sigma},
                  {"theta", prm.theta},   {"T", T}};

  const double coupling_cond = prm.norm_eff / std::sqrt(mux * muy);
  double w0 = 0;
  auto record = [&](int k, const Vector& x, const Vector& y) {
    TraceRecord r = MakeRecord(k, x, y, tally - start, options);
    if (options.reference) {
      r.bound_lhs = mux * r.dist_sq_x + muy * r.dist_sq_y;
      if (k == 0) w0 = *r.bound_lhs;
      if (k >= 1) r.bound_value = std::pow(prm.theta, k - 1) * coupling_cond * w0;
    }
    trace.records.push_back(std::move(r));
    return ShouldStop(options, k, x, y);
  };

  Vector x = x0, y = y0, x_tilde = x0;
  if (!record(0, x, y)) {
    for (int k = 1; k <= T; ++k) {
      y = prox_h(y + prm.sigma * a.adjoint(x_tilde, tally));
      const Vector x_next = prox_g(x - prm.gamma * a.forward(y, tally));
      x_tilde = x_next + prm.theta * (x_next - x);
      x = x_next;
      if (record(k, x, y)) break;
    }
  }
  Finish(trace);
  return trace;
}

RunTrace dppa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
              OracleTally& tally, const RunOptions& options) {
  RequireBalanced(p);
  RequirePositiveCount(K, "K");
  RequireStart(p, x0, y0);
  const double L = p.g().smoothness();
  const double mu = p.g().strong_convexity();
  const double kappa = L / mu;
  const double alpha = 1.0 / std::sqrt(L * mu);
  const double root = std::sqrt(kappa);
  const double eta = std::pow((root - 1.0) / (root + 1.0), 2);
  const CouplingOperator& a = p.coupling();
  const QuadraticProx prox_g(p.g(), alpha);
  const QuadraticProx prox_h(p.h(), alpha);
  const SkewProx skew(a, alpha);
  const OracleTally start = tally;

  RunTrace trace;
  trace.solver = "dppa";
  trace.has_reference = options.reference != nullptr;
  trace.params = {{"L", L},         {"mu", mu},   {"normA", a.norm()},
                  {"alpha", alpha}, {"eta", eta}, {"K", K}};

  Vector z_star, w_star;
  if (options.reference) {
    const Vector& xs = options.reference->x_star;
    const Vector& ys = options.reference->y_star;
    z_star = xs - alpha * a.apply_uncounted(Direction::kForward, ys);
    w_star = ys + alpha * a.apply_uncounted(Direction::kAdjoint, xs);
  }
  const double coro_factor = (a.norm() * a.norm() + L * mu) / (L * mu);
  double d0 = 0;

  trace.records.push_back(MakeRecord(0, x0, y0, OracleTally{}, options));
  if (options.reference) {
    d0 = trace.records[0].dist_sq_x + trace.records[0].dist_sq_y;
    trace.records[0].bound_lhs = d0;
  }
  Vector x = x0, y = y0;
  if (!ShouldStop(options, 0, x, y)) {
    for (int k = 1; k <= K; ++k) {
      const Vector z = x - alpha * a.forward(y, tally);
      const Vector w = y + alpha * a.adjoint(x, tally);
      const Vector x_tilde = prox_g(z);
      const Vector y_tilde = prox_h(w);
      const Vector u = 2.0 * x_tilde - z;
      const Vector v = 2.0 * y_tilde - w;
      std::tie(x, y) = skew(u, v);
      TraceRecord r = MakeRecord(k, x, y, tally - start, options);
      if (options.reference) {
        r.z_dist_sq = (z - z_star).squaredNorm();
        r.w_dist_sq = (w - w_star).squaredNorm();
        r.remark_x = (u - (2.0 * options.reference->x_star - z_star)).squaredNorm();
        r.remark_y = (v - (2.0 * options.reference->y_star - w_star)).squaredNorm();
        r.bound_lhs = r.dist_sq_x + r.dist_sq_y;
        r.bound_value = coro_factor * d0 * std::exp(-2.0 * k / root);
      }
      trace.records.push_back(std::move(r));
      if (ShouldStop(options, k, x, y)) break;
    }
  }
  Finish(trace);
  return trace;
}

DippaSchedule dippa_schedules(int k, double kappa, double L, double mu, double normA,
                              double C0) {
  RequirePositiveCount(k, "k");
  const double root = std::sqrt(kappa);
  const double rho = 1.0 / (2.0 * root);
  const double decay = std::pow(1.0 - rho, k + 1);
  const double lm = L * mu;
  return {C0 * mu / 16.0 * decay,
          C0 * lm / (2.0 * (1.0 + root) * (lm + normA * normA)) * decay};
}

InnerCounts dippa_inner_counts(double kappa, double normA, double L, double mu, double rho,
                               double C) {
  const double root_l = std::sqrt(L);
  const double root_mu = std::sqrt(mu);
  const double lm = L * mu;
  const double arg1 = 32.0 * C * (root_l + root_mu) * (root_l + root_mu) / (mu * (1.0 - rho));
  const int k1 = agd_iterations_for(std::sqrt(kappa), arg1);
  const double arg2 =
      20.0 * C * (1.0 + std::sqrt(kappa)) * (lm + normA * normA) / (lm * (1.0 - rho));
  const int k2 =
      static_cast<int>(std::floor((normA / std::sqrt(lm) + 1.0) * std::log(arg2))) + 2;
  return {std::max(k1, 1), std::max(k2, 1)};
}

double DippaParams::eps(int k) const {
  return dippa_schedules(k, kappa, L, mu, normA, C0).eps;
}

double DippaParams::delta(int k) const {
  return dippa_schedules(k, kappa, L, mu, normA, C0).delta;
}

DippaParams dippa_params(const SaddleProblem& p, double C0) {
  RequireBalanced(p);
  RequireC0(C0);
  DippaParams prm;
  prm.L = p.g().smoothness();
  prm.mu = p.g().strong_convexity();
  prm.kappa = prm.L / prm.mu;
  prm.normA = p.coupling().norm();
  prm.alpha = 1.0 / std::sqrt(prm.L * prm.mu);
  prm.rho = 1.0 / (2.0 * std::sqrt(prm.kappa));
  prm.C0 = C0;
  prm.C = 4.0 * std::sqrt(prm.kappa) + 1.0 + prm.normA * prm.normA / (prm.L * prm.mu);
  const InnerCounts counts =
      dippa_inner_counts(prm.kappa, prm.normA, prm.L, prm.mu, prm.rho, prm.C);
  prm.K1 = counts.K1;
  prm.K2 = counts.K2;
  return prm;
}

RunTrace dippa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K, double C0,
               OracleTally& tally, const RunOptions& options) {
  const DippaParams prm = dippa_params(p, C0);
  RequirePositiveCount(K, "K");
  RequireStart(p, x0, y0);
  const CouplingOperator& a = p.coupling();
  const double alpha = prm.alpha;
  // The second subproblem has curvature 1/alpha on both sides.
  const ApfbParams inner = apfb_params(1.0 / alpha, 1.0 / alpha, prm.normA);
  const QuadraticProx exact_g(p.g(), alpha);
  const QuadraticProx exact_h(p.h(), alpha);
  const SkewProx exact_skew(a, alpha);
  const OracleTally start = tally;

  RunTrace trace;
  trace.solver = "dippa";
  trace.has_reference = options.reference != nullptr;
  trace.params = {{"L", prm.L},         {"mu", prm.mu},   {"normA", prm.normA},
                  {"alpha", alpha},     {"rho", prm.rho}, {"C", prm.C},
                  {"C0", C0},           {"K1", prm.K1},   {"K2", prm.K2},
                  {"K", K}};

  trace.records.push_back(MakeRecord(0, x0, y0, OracleTally{}, options));
  if (options.reference) {
    trace.records[0].bound_lhs = trace.records[0].dist_sq_x + trace.records[0].dist_sq_y;
  }
  Vector x = x0, y = y0;
  if (!ShouldStop(options, 0, x, y)) {
    for (int k = 1; k <= K; ++k) {
      const Vector z = x - alpha * a.forward(y, tally);
      const Vector w = y + alpha * a.adjoint(x, tally);
      const Vector x_tilde = agd_minimize(ProximalObjective{&p.g(), alpha, z}, x, prm.K1, tally);
      const Vector y_tilde = agd_minimize(ProximalObjective{&p.h(), alpha, w}, y, prm.K1, tally);
      const Vector u = 2.0 * x_tilde - z;
      const Vector v = 2.0 * y_tilde - w;

      // APFB on 1/(2 alpha)||x - u||^2 + <x, A y> - 1/(2 alpha)||y - v||^2,
      // warm-started at the previous outer iterate.
      const IsotropicQuadratic gt{1.0 / alpha, u};
      const IsotropicQuadratic ht{1.0 / alpha, v};
      Vector xs = x, ys = y, xs_tilde = x;
      for (int t = 1; t <= prm.K2; ++t) {
        ys = ht.prox(inner.sigma, ys + inner.sigma * a.adjoint(xs_tilde, tally));
        const Vector xs_next = gt.prox(inner.gamma, xs - inner.gamma * a.forward(ys, tally));
        xs_tilde = xs_next + inner.theta * (xs_next - xs);
        xs = xs_next;
      }
      x = xs;
      y = ys;

      TraceRecord r = MakeRecord(k, x, y, tally - start, options);
      r.eps_k = prm.eps(k);
      r.delta_k = prm.delta(k);
      if (options.certify_inner) {
        r.inner_gap_g = ProximalGap(p.g(), alpha, x_tilde - exact_g(z));
        r.inner_gap_h = ProximalGap(p.h(), alpha, y_tilde - exact_h(w));
        const auto [x_sharp, y_sharp] = exact_skew(u, v);
        r.inner_dist_sq = (x - x_sharp).squaredNorm() + (y - y_sharp).squaredNorm();
      }
      if (options.reference) {
        r.bound_lhs = r.dist_sq_x + r.dist_sq_y;
        r.bound_value = prm.C * std::pow(1.0 - prm.rho, k) * C0;
      }
      trace.records.push_back(std::move(r));
      if (ShouldStop(options, k, x, y)) break;
    }
  }
  Finish(trace);
  return trace;
}

double aipfb_schedules(int k, double mux, double muy, double normA, double C0) {
  RequirePositiveCount(k, "k");
  const double root = std::sqrt(mux * muy);
  const double theta = normA / (root + normA);
  const double rho = root / (2.0 * root + 4.0 * normA);
  return C0 * rho * (1.0 - theta) / 16.0 * std::pow(1.0 - rho, k - 1);
}

double AipfbParams::eps(int k) const { return aipfb_schedules(k, mux, muy, normA, C0); }

AipfbParams aipfb_params(const SaddleProblem& p, double C0) {
  RequireC0(C0);
  AipfbParams prm;
  prm.mux = p.g().strong_convexity();
  prm.muy = p.h().strong_convexity();
  prm.normA = p.coupling().norm();
  prm.apfb = apfb_params(prm.mux, prm.muy, prm.normA);
  const double root = std::sqrt(prm.mux * prm.muy);
  prm.kappa_tilde = prm.normA / root;
  prm.theta = prm.normA / (root + prm.normA);
  prm.rho = root / (2.0 * root + 4.0 * prm.normA);
  prm.C0 = C0;
  prm.C = prm.kappa_tilde + 1.0;
  const double kt = prm.kappa_tilde;
  const double kx = p.kappa_x();
  const double ky = p.kappa_y();
  const double base = prm.rho * (1.0 - prm.theta);
  prm.K1 = std::max(1, agd_iterations_for((ky + kt) / (1.0 + kt),
                                          320.0 * prm.C * (ky + 2.0 * kt + 1.0) /
                                              (base * (1.0 - prm.rho))));
  prm.K2 = std::max(
      1, agd_iterations_for((kx + kt) / (1.0 + kt), 80.0 * prm.C * (kx + 2.0 * kt + 1.0) / base));
  return prm;
}

RunTrace aipfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int T, double C0,
               OracleTally& tally, const RunOptions& options) {
  const AipfbParams prm = aipfb_params(p, C0);
  RequirePositiveCount(T, "T");
  RequireStart(p, x0, y0);
  const CouplingOperator& a = p.coupling();
  const double gamma = prm.apfb.gamma;
  const double sigma = prm.apfb.sigma;
  const double theta = prm.apfb.theta;
  const QuadraticProx exact_g(p.g(), gamma);
  const QuadraticProx exact_h(p.h(), sigma);
  const OracleTally start = tally;

  RunTrace trace;
  trace.solver = "aipfb";
  trace.has_reference = options.reference != nullptr;
  trace.params = {{"mux", prm.mux},   {"muy", prm.muy},   {"normA", prm.normA},
                  {"rho", prm.rho},   {"C", prm.C},       {"C0", C0},
                  {"gamma", gamma},   {"sigma", sigma},   {"theta", theta},
                  {"K1", prm.K1},     {"K2", prm.K2},     {"T", T}};

  auto weighted = [&](const TraceRecord& r) {
    return prm.mux * r.dist_sq_x + prm.muy * r.dist_sq_y;
  };
  trace.records.push_back(MakeRecord(0, x0, y0, OracleTally{}, options));
  if (options.reference) trace.records[0].bound_lhs = weighted(trace.records[0]);

  Vector x = x0, y = y0, x_tilde = x0;
  if (!ShouldStop(options, 0, x, y)) {
    for (int k = 1; k <= T; ++k) {
      const Vector w = y + sigma * a.adjoint(x_tilde, tally);
      const Vector y_next = agd_minimize(ProximalObjective{&p.h(), sigma, w}, y, prm.K1, tally);
      const Vector z = x - gamma * a.forward(y_next, tally);
      const Vector x_next = agd_minimize(ProximalObjective{&p.g(), gamma, z}, x, prm.K2, tally);
      x_tilde = x_next + theta * (x_next - x);
      x = x_next;
      y = y_next;

      TraceRecord r = MakeRecord(k, x, y, tally - start, options);
      r.eps_k = prm.eps(k);
      if (options.certify_inner) {
        r.inner_gap_h = ProximalGap(p.h(), sigma, y - exact_h(w));
        r.inner_gap_g = ProximalGap(p.g(), gamma, x - exact_g(z));
      }
      if (options.reference) {
        r.bound_lhs = weighted(r);
        if (k >= 2) r.bound_value = prm.C * std::pow(1.0 - prm.rho, k) * C0;
      }
      trace.records.push_back(std::move(r));
      if (ShouldStop(options, k, x, y)) break;
    }
  }
  Finish(trace);
  return trace;
}

}  // namespace saddle
