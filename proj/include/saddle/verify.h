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


#ifndef SADDLE_VERIFY_H_
#define SADDLE_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saddle/numerics.h"
#include "saddle/parallel.h"
#include "saddle/problem.h"
#include "saddle/trace.h"

namespace saddle {

struct PropertyReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  // Smallest margin seen; negative beyond the tolerance means failure.
  double worst_slack = 0;
  std::optional<double> observed_rate;

  bool passed() const { return failures == 0; }
};

// Slack of the strong-convexity/smoothness interpolation inequality
//   <g1 - g2, x1 - x2> >= l mu/(l+mu) ||x1 - x2||^2 + 1/(l+mu) ||g1 - g2||^2
// for one pair. `scale` receives 1 + |lhs| + |rhs|.
double smooth_strong_slack(const QuadraticFunction& q, const Vector& x1, const Vector& x2,
                           double* scale = nullptr);

// Slacks of the three equivalent smoothness conditions with l = L:
// Lipschitz gradient, quadratic upper bound, cocoercivity.
struct SmoothnessSlacks {
  double lipschitz = 0;
  double upper_bound = 0;
  double cocoercive = 0;
  double scale = 1;
};
SmoothnessSlacks smoothness_slacks(const QuadraticFunction& q, const Vector& x1,
                                   const Vector& x2);

PropertyReport check_smooth_strong(const QuadraticFunction& q, int n, uint64_t seed,
                                   Execution execution = Execution::kSerial);
PropertyReport check_smoothness_equivalences(const QuadraticFunction& q, int n, uint64_t seed,
                                             Execution execution = Execution::kSerial);
// observed_rate is the largest ||u1 - u2|| / ||x1 - x2|| seen.
PropertyReport check_prox_nonexpansive(const QuadraticFunction& q, double gamma, int n,
                                       uint64_t seed, Execution execution = Execution::kSerial);

enum class Monitor {
  kAgd,
  kApfb,
  kDppa,
  kDppaRemark,
  kCoroDppa,
  kDippaOut,
  kAipfbOut,
  kDippaInner,
  kAipfbInner,
  kCatalystInner,
};

std::string_view monitor_name(Monitor monitor);
// Throws kBadArgument for unknown names.
Monitor parse_monitor(std::string_view name);
// Monitors that apply to traces of the named solver.
std::vector<Monitor> monitors_for(std::string_view solver);

// Re-evaluates a bound on a recorded trace. Constants are recomputed from
// the echoed parameters. Throws kMissingField when the trace lacks what the
// bound needs.
PropertyReport monitor_bound(const RunTrace& trace, Monitor which);

// Max error between the gradient and central differences with step
// 1e-5 (1 + ||x||), relative to 1 + ||grad||_inf.
double gradient_fd_check(const QuadraticFunction& q, const Vector& x);

}  // namespace saddle

#endif  // SADDLE_VERIFY_H_
