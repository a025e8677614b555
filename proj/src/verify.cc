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


#include "saddle/verify.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "saddle/error.h"
#include "saddle/prox.h"

namespace saddle {
namespace {

constexpr double kLemmaTol = 1e-10;
constexpr double kBoundTol = 1e-9;
constexpr double kRatioTol = 1e-10;

struct Pair {
  Vector x1;
  Vector x2;
};

// Pairs span several orders of magnitude in both position and separation.
Pair RandomPair(int d, uint64_t seed, int trial) {
  Rng rng(derive_seed(seed, static_cast<uint64_t>(trial)));
  const double m1 = std::pow(10.0, rng.Uniform(-2, 2));
  const double m2 = std::pow(10.0, rng.Uniform(-3, 1)) * m1;
  Pair p;
  p.x1 = m1 * rng.NormalVector(d);
  p.x2 = p.x1 + m2 * rng.NormalVector(d);
  return p;
}

struct TrialResult {
  double slack = 0;
  bool failed = false;
  double rate = 0;
};

PropertyReport Reduce(std::string name, const std::vector<TrialResult>& results,
                      bool with_rate) {
  PropertyReport report;
  report.name = std::move(name);
  report.trials = static_cast<int>(results.size());
  report.worst_slack = std::numeric_limits<double>::infinity();
  double rate = 0;
  for (const auto& r : results) {
    report.failures += r.failed ? 1 : 0;
    report.worst_slack = std::min(report.worst_slack, r.slack);
    rate = std::max(rate, r.rate);
  }
  if (with_rate) report.observed_rate = rate;
  return report;
}

void RequireTrials(int n) {
  if (n < 1) throw Error(ErrorCode::kBadArgument, "trial count must be at least 1");
}

// Accumulates bound checks of the form lhs <= bound (+ additive slack).
class BoundCheck {
 public:
  explicit BoundCheck(std::string_view name) { report_.name = name; }

  void Check(double lhs, double bound) { CheckWithTol(lhs, bound, kBoundTol * (1 + std::abs(bound))); }

  void CheckWithTol(double lhs, double bound, double tol) {
    ++report_.trials;
    const double margin = bound - lhs;
    if (report_.trials == 1 || margin < report_.worst_slack) report_.worst_slack = margin;
    if (!(margin >= -tol)) ++report_.failures;
  }

  void Rate(double r) {
    report_.observed_rate = std::max(report_.observed_rate.value_or(0), r);
  }

  PropertyReport Done() {
    if (report_.trials == 0) {
      throw Error(ErrorCode::kMissingField, report_.name + ": trace has no applicable rows");
    }
    return std::move(report_);
  }

 private:
  PropertyReport report_;
};

double Need(const std::optional<double>& v, const char* field, int k) {
  if (!v) {
    throw Error(ErrorCode::kMissingField,
                std::string("row ") + std::to_string(k) + " lacks " + field);
  }
  return *v;
}

void NeedReference(const RunTrace& trace) {
  if (!trace.has_reference || trace.records.empty()) {
    throw Error(ErrorCode::kMissingField, "trace has no reference distances");
  }
}

double DistSum(const TraceRecord& r) { return r.dist_sq_x + r.dist_sq_y; }

PropertyReport MonitorAgd(const RunTrace& trace) {
  NeedReference(trace);
  const double ell = trace.param("ell");
  const double mu = trace.param("mu");
  const double d0 = DistSum(trace.records.front());
  BoundCheck check("agd");
  for (const auto& r : trace.records) {
    const double bound = 0.5 * (ell + mu) * d0 * std::exp(-r.k / std::sqrt(ell / mu));
    check.Check(Need(r.bound_lhs, "bound_lhs", r.k), bound);
  }
  return check.Done();
}

PropertyReport MonitorApfb(const RunTrace& trace) {
  NeedReference(trace);
  const double mux = trace.param("mux");
  const double muy = trace.param("muy");
  const double norm = trace.param("normA_eff");
  const double root = std::sqrt(mux * muy);
  const double theta = norm / (root + norm);
  auto weighted = [&](const TraceRecord& r) { return mux * r.dist_sq_x + muy * r.dist_sq_y; };
  const double w0 = weighted(trace.records.front());
  BoundCheck check("apfb");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    check.Check(weighted(r), std::pow(theta, r.k - 1) * (norm / root) * w0);
  }
  return check.Done();
}

double DppaEta(const RunTrace& trace) {
  const double root = std::sqrt(trace.param("L") / trace.param("mu"));
  return std::pow((root - 1) / (root + 1), 2);
}

PropertyReport MonitorDppa(const RunTrace& trace) {
  NeedReference(trace);
  const double eta = DppaEta(trace);
  BoundCheck check("dppa");
  const TraceRecord* prev = nullptr;
  double floor = 0;
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    const double cur = Need(r.z_dist_sq, "z_dist_sq", r.k) + Need(r.w_dist_sq, "w_dist_sq", r.k);
    if (prev) {
      const double before = *prev->z_dist_sq + *prev->w_dist_sq;
      const double bound = (eta + kRatioTol) * before;
      check.CheckWithTol(cur, bound, kBoundTol * (1 + eta * before));
      // Ratios of distances at roundoff level carry no rate information.
      if (before > floor) check.Rate(cur / before);
    } else {
      floor = 1e-20 * std::max(1.0, cur);
    }
    prev = &r;
  }
  return check.Done();
}

PropertyReport MonitorDppaRemark(const RunTrace& trace) {
  NeedReference(trace);
  const double eta = DppaEta(trace);
  BoundCheck check("dppa_remark");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    check.Check(Need(r.remark_x, "remark_x", r.k), eta * Need(r.z_dist_sq, "z_dist_sq", r.k));
    check.Check(Need(r.remark_y, "remark_y", r.k), eta * Need(r.w_dist_sq, "w_dist_sq", r.k));
  }
  return check.Done();
}

PropertyReport MonitorCoroDppa(const RunTrace& trace) {
  NeedReference(trace);
  const double L = trace.param("L");
  const double mu = trace.param("mu");
  const double norm = trace.param("normA");
  const double factor = (norm * norm + L * mu) / (L * mu);
  const double d0 = DistSum(trace.records.front());
  BoundCheck check("coro_dppa");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    check.Check(DistSum(r), factor * d0 * std::exp(-2.0 * r.k / std::sqrt(L / mu)));
  }
  return check.Done();
}

PropertyReport MonitorDippaOut(const RunTrace& trace) {
  NeedReference(trace);
  const double L = trace.param("L");
  const double mu = trace.param("mu");
  const double norm = trace.param("normA");
  const double c0 = trace.param("C0");
  const double root = std::sqrt(L / mu);
  const double C = 4 * root + 1 + norm * norm / (L * mu);
  const double rho = 1 / (2 * root);
  BoundCheck check("dippa_out");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    check.Check(DistSum(r), C * std::pow(1 - rho, r.k) * c0);
  }
  return check.Done();
}

PropertyReport MonitorAipfbOut(const RunTrace& trace) {
  NeedReference(trace);
  const double mux = trace.param("mux");
  const double muy = trace.param("muy");
  const double norm = trace.param("normA");
  const double c0 = trace.param("C0");
  const double root = std::sqrt(mux * muy);
  const double C = norm / root + 1;
  const double rho = root / (2 * root + 4 * norm);
  BoundCheck check("aipfb_out");
  for (const auto& r : trace.records) {
    if (r.k < 2) continue;
    check.Check(mux * r.dist_sq_x + muy * r.dist_sq_y, C * std::pow(1 - rho, r.k) * c0);
  }
  return check.Done();
}

PropertyReport MonitorDippaInner(const RunTrace& trace) {
  const double L = trace.param("L");
  const double mu = trace.param("mu");
  const double norm = trace.param("normA");
  const double c0 = trace.param("C0");
  const double root = std::sqrt(L / mu);
  const double rho = 1 / (2 * root);
  BoundCheck check("dippa_inner");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    const double decay = std::pow(1 - rho, r.k + 1);
    const double eps = c0 * mu / 16 * decay;
    const double delta = c0 * L * mu / (2 * (1 + root) * (L * mu + norm * norm)) * decay;
    check.Check(Need(r.inner_gap_g, "inner_gap_g", r.k), eps);
    check.Check(Need(r.inner_gap_h, "inner_gap_h", r.k), eps);
    check.Check(Need(r.inner_dist_sq, "inner_dist_sq", r.k), delta);
  }
  return check.Done();
}

PropertyReport MonitorAipfbInner(const RunTrace& trace) {
  const double mux = trace.param("mux");
  const double muy = trace.param("muy");
  const double norm = trace.param("normA");
  const double c0 = trace.param("C0");
  const double root = std::sqrt(mux * muy);
  const double theta = norm / (root + norm);
  const double rho = root / (2 * root + 4 * norm);
  BoundCheck check("aipfb_inner");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    const double eps = c0 * rho * (1 - theta) / 16 * std::pow(1 - rho, r.k - 1);
    check.Check(Need(r.inner_gap_g, "inner_gap_g", r.k), eps);
    check.Check(Need(r.inner_gap_h, "inner_gap_h", r.k), eps);
  }
  return check.Done();
}

PropertyReport MonitorCatalystInner(const RunTrace& trace) {
  const double eps0 = trace.param("eps0");
  const double ratio = 1 - 0.9 * std::sqrt(trace.param("q"));
  BoundCheck check("catalyst_inner");
  for (const auto& r : trace.records) {
    if (r.k < 1) continue;
    check.Check(Need(r.inner_dist_sq, "inner_dist_sq", r.k), eps0 * std::pow(ratio, r.k));
  }
  return check.Done();
}

constexpr std::array<std::pair<Monitor, std::string_view>, 10> kMonitorNames = {{
    {Monitor::kAgd, "agd"},
    {Monitor::kApfb, "apfb"},
    {Monitor::kDppa, "dppa"},
    {Monitor::kDppaRemark, "dppa_remark"},
    {Monitor::kCoroDppa, "coro_dppa"},
    {Monitor::kDippaOut, "dippa_out"},
    {Monitor::kAipfbOut, "aipfb_out"},
    {Monitor::kDippaInner, "dippa_inner"},
    {Monitor::kAipfbInner, "aipfb_inner"},
    {Monitor::kCatalystInner, "catalyst_inner"},
}};

}  // namespace

double smooth_strong_slack(const QuadraticFunction& q, const Vector& x1, const Vector& x2,
                           double* scale) {
  const double ell = q.smoothness();
  const double mu = q.strong_convexity();
  const Vector dx = x1 - x2;
  const Vector dg = q.gradient_uncounted(x1) - q.gradient_uncounted(x2);
  const double lhs = dg.dot(dx);
  const double rhs = ell * mu / (ell + mu) * dx.squaredNorm() + dg.squaredNorm() / (ell + mu);
  if (scale) *scale = 1 + std::abs(lhs) + std::abs(rhs);
  return lhs - rhs;
}

SmoothnessSlacks smoothness_slacks(const QuadraticFunction& q, const Vector& x1,
                                   const Vector& x2) {
  const double ell = q.smoothness();
  const Vector dx = x2 - x1;
  const Vector g1 = q.gradient_uncounted(x1);
  const Vector dg = q.gradient_uncounted(x2) - g1;
  const double upper = q.value(x2) - q.value(x1) - g1.dot(dx);
  SmoothnessSlacks s;
  s.lipschitz = ell * dx.norm() - dg.norm();
  s.upper_bound = 0.5 * ell * dx.squaredNorm() - upper;
  s.cocoercive = dg.dot(dx) - dg.squaredNorm() / ell;
  s.scale = 1 + ell * dx.squaredNorm() + dg.squaredNorm() / ell + std::abs(q.value(x1)) +
            std::abs(q.value(x2)) + ell * dx.norm();
  return s;
}

PropertyReport check_smooth_strong(const QuadraticFunction& q, int n, uint64_t seed,
                                   Execution execution) {
  RequireTrials(n);
  std::vector<TrialResult> results(n);
  for_each_index(n, execution, [&](int i) {
    const Pair pair = RandomPair(q.dim(), seed, i);
    double scale = 1;
    const double slack = smooth_strong_slack(q, pair.x1, pair.x2, &scale);
    results[i] = {slack, slack < -kLemmaTol * scale, 0};
  });
  return Reduce("smooth_strong", results, false);
}

PropertyReport check_smoothness_equivalences(const QuadraticFunction& q, int n, uint64_t seed,
                                             Execution execution) {
  RequireTrials(n);
  std::vector<TrialResult> results(n);
  for_each_index(n, execution, [&](int i) {
    const Pair pair = RandomPair(q.dim(), seed, i);
    const SmoothnessSlacks s = smoothness_slacks(q, pair.x1, pair.x2);
    const double worst = std::min({s.lipschitz, s.upper_bound, s.cocoercive});
    results[i] = {worst, worst < -kLemmaTol * s.scale, 0};
  });
  return Reduce("smoothness_equivalences", results, false);
}

PropertyReport check_prox_nonexpansive(const QuadraticFunction& q, double gamma, int n,
                                       uint64_t seed, Execution execution) {
  RequireTrials(n);
  if (!(gamma > 0)) throw Error(ErrorCode::kBadArgument, "gamma must be positive");
  const QuadraticProx prox(q, gamma);
  std::vector<TrialResult> results(n);
  for_each_index(n, execution, [&](int i) {
    const Pair pair = RandomPair(q.dim(), seed, i);
    const double in = (pair.x1 - pair.x2).norm();
    const double out = (prox(pair.x1) - prox(pair.x2)).norm();
    results[i] = {in - out, out > in * (1 + 1e-12), in > 0 ? out / in : 0};
  });
  return Reduce("prox_nonexpansive", results, true);
}

std::string_view monitor_name(Monitor monitor) {
  for (const auto& [m, name] : kMonitorNames) {
    if (m == monitor) return name;
  }
  return "unknown";
}

Monitor parse_monitor(std::string_view name) {
  for (const auto& [m, n] : kMonitorNames) {
    if (n == name) return m;
  }
  throw Error(ErrorCode::kBadArgument, "unknown monitor '" + std::string(name) + "'");
}

std::vector<Monitor> monitors_for(std::string_view solver) {
  if (solver == "agd") return {Monitor::kAgd};
  if (solver == "apfb") return {Monitor::kApfb};
  if (solver == "dppa") return {Monitor::kDppa, Monitor::kDppaRemark, Monitor::kCoroDppa};
  if (solver == "dippa") return {Monitor::kDippaOut, Monitor::kDippaInner};
  if (solver == "aipfb") return {Monitor::kAipfbOut, Monitor::kAipfbInner};
  if (solver == "catalyst-dippa" || solver == "catalyst-aipfb") {
    return {Monitor::kCatalystInner};
  }
  throw Error(ErrorCode::kBadArgument, "unknown solver '" + std::string(solver) + "'");
}

PropertyReport monitor_bound(const RunTrace& trace, Monitor which) {
  switch (which) {
    case Monitor::kAgd: return MonitorAgd(trace);
    case Monitor::kApfb: return MonitorApfb(trace);
    case Monitor::kDppa: return MonitorDppa(trace);
    case Monitor::kDppaRemark: return MonitorDppaRemark(trace);
    case Monitor::kCoroDppa: return MonitorCoroDppa(trace);
    case Monitor::kDippaOut: return MonitorDippaOut(trace);
    case Monitor::kAipfbOut: return MonitorAipfbOut(trace);
    case Monitor::kDippaInner: return MonitorDippaInner(trace);
    case Monitor::kAipfbInner: return MonitorAipfbInner(trace);
    case Monitor::kCatalystInner: return MonitorCatalystInner(trace);
  }
  throw Error(ErrorCode::kBadArgument, "unknown monitor");
}

double gradient_fd_check(const QuadraticFunction& q, const Vector& x) {
  const double step = 1e-5 * (1 + x.norm());
  const Vector grad = q.gradient_uncounted(x);
  double worst = 0;
  Vector probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = q.value(probe);
    probe[i] = x[i] - step;
    const double down = q.value(probe);
    probe[i] = x[i];
    worst = std::max(worst, std::abs((up - down) / (2 * step) - grad[i]));
  }
  return worst / (1 + grad.lpNorm<Eigen::Infinity>());
}

}  // namespace saddle
