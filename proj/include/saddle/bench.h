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


#ifndef SADDLE_BENCH_H_
#define SADDLE_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "saddle/parallel.h"
#include "saddle/problem.h"
#include "saddle/trace.h"
#include "saddle/verify.h"

namespace saddle {

struct ExperimentConfig {
  uint64_t seed = 0;
  int dx = 1;
  int dy = 1;
  double Lx = 1;
  double Ly = 1;
  double mux = 1;
  double muy = 1;
  double normA = 0;
  std::string solver = "apfb";
  double eps = 1e-6;  // target: ||x - x*|| + ||y - y*|| <= eps
  int max_outer = 1000;
  std::string out_path;  // empty: no CSV is written

  ProblemSpec problem() const { return {seed, dx, dy, Lx, Ly, mux, muy, normA}; }
};

// Throws kConfig naming the offending field.
void validate(const ExperimentConfig& cfg);
// Every field except out_path is required; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(std::string_view text);
std::string to_json(const ExperimentConfig& cfg);

extern const std::vector<std::string_view> kSolverNames;

struct GeneratedProblem {
  SaddleProblem problem;
  SaddleReference reference;
};

GeneratedProblem generate_problem(const ExperimentConfig& cfg);

struct ExperimentResult {
  RunTrace trace;
  std::vector<PropertyReport> reports;
  bool reached_eps = false;

  bool monitors_passed() const;
};

// Runs from (0, 0) until the iterate is an eps-saddle or max_outer outer
// iterations have run, certifies the trace, and writes the CSV when
// out_path is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Independent configs in parallel slots; results are in input order.
std::vector<ExperimentResult> run_batch(const std::vector<ExperimentConfig>& configs,
                                        Execution execution = Execution::kParallel);

enum class Combine { kMax, kSum };

struct BoundCurvePoint {
  double normA = 0;
  double upper_this_paper = 0;
  double upper_wang = 0;
  double upper_lin = 0;
  double upper_nesterov = 0;
  double lower = 0;
};

// Complexity orders with unit constants and logarithms dropped. Terms of
// each row are combined by max (default) or by sum.
std::vector<BoundCurvePoint> complexity_curves(double Lx, double Ly, double mux, double muy,
                                               const std::vector<double>& normA_grid,
                                               Combine combine = Combine::kMax);

// "lo:hi:logN", "lo:hi:linN" or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

void write_curves_csv(const std::vector<BoundCurvePoint>& points, std::ostream& out);

}  // namespace saddle

#endif  // SADDLE_BENCH_H_
