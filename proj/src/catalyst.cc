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


#include "saddle/catalyst.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "saddle/error.h"

namespace saddle {
namespace {

enum class Inner { kDippa, kAipfb };

bool RelClose(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

SaddleReference Swap(const SaddleReference& ref) { return {ref.y_star, ref.x_star, ref.residual}; }

void SwapRecords(RunTrace& trace) {
  for (auto& r : trace.records) {
    std::swap(r.x, r.y);
    std::swap(r.dist_sq_x, r.dist_sq_y);
    std::swap(r.inner_gap_g, r.inner_gap_h);
  }
  std::swap(trace.x, trace.y);
}

RunTrace RunInner(Inner inner, const SaddleProblem& p, const Vector& x0, const Vector& y0,
                  int iterations, double c0, OracleTally& tally, const RunOptions& options) {
  return inner == Inner::kDippa ? dippa(p, x0, y0, iterations, c0, tally, options)
                                : aipfb(p, x0, y0, iterations, c0, tally, options);
}

// Iterations after which the inner solver's own bound guarantees squared
// distance <= eps from an initial distance bound c0.
int InnerIterations(Inner inner, const SaddleProblem& p, double c0, double eps) {
  if (inner == Inner::kDippa) {
    const DippaParams prm = dippa_params(p, c0);
    const double count = std::floor(2.0 * std::sqrt(prm.kappa) * std::log(prm.C * c0 / eps)) + 1;
    return std::max(1, static_cast<int>(count));
  }
  // Here c0 is the weighted distance mux ||.||^2 + muy ||.||^2.
  const double mu_min = std::min(p.g().strong_convexity(), p.h().strong_convexity());
  const AipfbParams prm = aipfb_params(p, c0);
  const double count = std::floor(std::log(prm.C * prm.C0 / (mu_min * eps)) / prm.rho) + 1;
  return std::max(2, static_cast<int>(count));
}

RunTrace Catalyst(Inner inner, const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
                  double eps0, OracleTally& tally, const CatalystOptions& options) {
  const char* name = inner == Inner::kDippa ? "catalyst-dippa" : "catalyst-aipfb";
  if (K < 1) throw Error(ErrorCode::kBadArgument, "K must be at least 1");
  if (!(eps0 > 0) || !std::isfinite(eps0)) {
    throw Error(ErrorCode::kBadC0, "eps0 must be positive and finite");
  }
  if (x0.size() != p.dx() || y0.size() != p.dy()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point does not match problem dimensions");
  }
  const double mux = p.g().strong_convexity();
  const double muy = p.h().strong_convexity();

  // The envelope goes on the side with the weaker curvature.
  if (muy < mux && !RelClose(mux, muy)) {
    CatalystOptions swapped = options;
    std::optional<SaddleReference> ref;
    if (options.reference) {
      ref = Swap(*options.reference);
      swapped.reference = &*ref;
    }
    if (options.stop) {
      swapped.stop = [&](int k, const Vector& x, const Vector& y) { return options.stop(k, y, x); };
    }
    RunTrace trace = Catalyst(inner, p.swapped(), y0, x0, K, eps0, tally, swapped);
    SwapRecords(trace);
    trace.params["swapped"] = 1;
    return trace;
  }

  const double Lx = p.g().smoothness();
  const CatalystParams prm = catalyst_params(Lx, p.h().smoothness(), mux, muy);

  if (prm.beta == 0) {
    RunTrace trace = RunInner(inner, p, x0, y0, K, eps0, tally, options);
    trace.solver = name;
    trace.params["beta"] = 0;
    trace.params["q"] = 1;
    trace.params["catalyst_theta"] = 0;
    return trace;
  }

  const OracleTally start = tally;
  RunTrace trace;
  trace.solver = name;
  trace.has_reference = options.reference != nullptr;
  trace.params = {{"Lx", Lx},       {"mux", mux},       {"muy", muy},
                  {"beta", prm.beta}, {"q", prm.q},     {"catalyst_theta", prm.theta},
                  {"ratio", prm.ratio}, {"eps0", eps0}, {"K", K},
                  {"exact_c0", options.exact_subproblem_c0 ? 1.0 : 0.0}};

  auto base_record = [&](int k, const Vector& x, const Vector& y) {
    TraceRecord r;
    r.k = k;
    r.x = x;
    r.y = y;
    r.tally = tally - start;
    if (options.reference) {
      r.dist_sq_x = (x - options.reference->x_star).squaredNorm();
      r.dist_sq_y = (y - options.reference->y_star).squaredNorm();
      r.bound_lhs = r.dist_sq_x + r.dist_sq_y;
    }
    return r;
  };

  trace.records.push_back(base_record(0, x0, y0));
  Vector x = x0, y = y0, x_prev = x0, center = x0, prev_center = x0;
  bool stop = options.stop && options.stop(0, x, y);
  for (int k = 1; k <= K && !stop; ++k) {
    const SaddleProblem p_k = catalyst_envelope(p, prm.beta, center);
    const RescaledProblem scaled = rescale_envelope(p_k, Lx, prm.beta);
    const double s = scaled.scale;
    const double eps_k = prm.eps(eps0, k);
    const Vector x_start = x / s;

    std::optional<SaddleReference> ref_k;
    if (options.exact_subproblem_c0 || options.certify_inner) {
      ref_k = reference_saddle(scaled.problem);
    }
    double c0;
    if (options.exact_subproblem_c0) {
      c0 = squared_distance(*ref_k, x_start, y);
    } else if (k == 1) {
      c0 = 4.0 * eps0 / (s * s);
    } else {
      c0 = (2.0 * prm.eps(eps0, k - 1) + 2.0 * (center - prev_center).squaredNorm()) / (s * s);
    }
    if (inner == Inner::kAipfb) {
      const double mx = scaled.problem.g().strong_convexity();
      const double my = scaled.problem.h().strong_convexity();
      c0 = options.exact_subproblem_c0
               ? mx * (x_start - ref_k->x_star).squaredNorm() + my * (y - ref_k->y_star).squaredNorm()
               : std::max(mx, my) * c0;
    }
    c0 = std::max(c0, std::numeric_limits<double>::min());

    RunOptions inner_options;
    inner_options.reference = options.exact_subproblem_c0 ? &*ref_k : nullptr;
    inner_options.certify_inner = options.certify_inner;
    const int iterations = InnerIterations(inner, scaled.problem, c0, eps_k);
    OracleTally inner_tally;
    const RunTrace sub =
        RunInner(inner, scaled.problem, x_start, y, iterations, c0, inner_tally, inner_options);
    tally += inner_tally;

    x = s * sub.x;
    y = sub.y;
    TraceRecord r = base_record(k, x, y);
    r.eps_k = eps_k;
    if (ref_k) {
      r.inner_dist_sq = (x - s * ref_k->x_star).squaredNorm() + (y - ref_k->y_star).squaredNorm();
    }
    trace.records.push_back(std::move(r));

    prev_center = center;
    center = x + prm.theta * (x - x_prev);
    x_prev = x;
    stop = options.stop && options.stop(k, x, y);
  }
  trace.x = x;
  trace.y = y;
  return trace;
}

}  // namespace

double CatalystParams::eps(double eps0, int k) const { return eps0 * std::pow(ratio, k); }

CatalystParams catalyst_params(double Lx, double Ly, double mux, double muy) {
  if (!RelClose(Lx, Ly)) {
    throw Error(ErrorCode::kNotRescaled, "catalyst requires Lx = Ly; rescale the problem first");
  }
  if (!(mux > 0) || mux > muy * (1 + 1e-12)) {
    throw Error(ErrorCode::kBadOrdering, "catalyst requires 0 < mux <= muy");
  }
  CatalystParams prm;
  if (RelClose(mux, muy)) {
    prm.ratio = 1.0 - 0.9;
    return prm;
  }
  if (muy >= Lx) {
    throw Error(ErrorCode::kBadOrdering, "catalyst requires muy < Lx");
  }
  prm.beta = Lx * (muy - mux) / (Lx - muy);
  prm.q = mux / (mux + prm.beta);
  const double root = std::sqrt(prm.q);
  prm.theta = (1.0 - root) / (1.0 + root);
  prm.ratio = 1.0 - 0.9 * root;
  return prm;
}

SaddleProblem catalyst_envelope(const SaddleProblem& p, double beta, const Vector& center) {
  if (!(beta >= 0)) throw Error(ErrorCode::kBadArgument, "beta must be nonnegative");
  if (beta == 0) return p;
  return p.with_g(p.g().shifted(beta, center));
}

RescaledProblem rescale_envelope(const SaddleProblem& p_k, double Lx, double beta) {
  if (beta == 0) return {p_k, 1.0};
  const double s = std::sqrt(Lx / (Lx + beta));
  return {p_k.with_g(p_k.g().composed_with_scale(s)).with_coupling(p_k.coupling().scaled(s)), s};
}

RunTrace catalyst_dippa(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
                        double eps0, OracleTally& tally, const CatalystOptions& options) {
  return Catalyst(Inner::kDippa, p, x0, y0, K, eps0, tally, options);
}

RunTrace catalyst_aipfb(const SaddleProblem& p, const Vector& x0, const Vector& y0, int K,
                        double eps0, OracleTally& tally, const CatalystOptions& options) {
  return Catalyst(Inner::kAipfb, p, x0, y0, K, eps0, tally, options);
}

}  // namespace saddle
