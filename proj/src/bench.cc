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


#include "saddle/bench.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "saddle/catalyst.h"
#include "saddle/error.h"
#include "saddle/solvers.h"

namespace saddle {

const std::vector<std::string_view> kSolverNames = {
    "agd", "apfb", "dppa", "dippa", "aipfb", "catalyst-dippa", "catalyst-aipfb"};

namespace {

[[noreturn]] void Fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfig, field + ": " + why);
}

// Distances are reported against the original problem; the CSV keeps
// rescaled y iterates mapped back by `scale`.
void UnscaleY(RunTrace& trace, double scale, const SaddleReference& ref) {
  for (auto& r : trace.records) {
    r.y *= scale;
    r.dist_sq_y = (r.y - ref.y_star).squaredNorm();
    r.dist_sq_x = (r.x - ref.x_star).squaredNorm();
    r.bound_lhs = r.dist_sq_x + r.dist_sq_y;
  }
  trace.y *= scale;
  trace.params["y_scale"] = scale;
}

RunTrace RunSolver(const ExperimentConfig& cfg, const GeneratedProblem& gen) {
  const SaddleProblem& p = gen.problem;
  const SaddleReference& ref = gen.reference;
  const Vector x0 = Vector::Zero(p.dx());
  const Vector y0 = Vector::Zero(p.dy());
  const double d0 = squared_distance(ref, x0, y0);
  const double tiny = std::numeric_limits<double>::min();
  OracleTally tally;
  RunOptions options;
  options.reference = &ref;
  options.stop = [&](int, const Vector& x, const Vector& y) {
    return is_eps_saddle(ref, x, y, cfg.eps);
  };
  const int n = cfg.max_outer;

  if (cfg.solver == "agd") {
    if (cfg.normA != 0) Fail("normA", "solver agd needs a decoupled problem (normA = 0)");
    return agd_decoupled(p, x0, y0, n, tally, options);
  }
  if (cfg.solver == "apfb") return apfb(p, x0, y0, n, tally, options);
  if (cfg.solver == "dppa") return dppa(p, x0, y0, n, tally, options);
  if (cfg.solver == "dippa") return dippa(p, x0, y0, n, std::max(d0, tiny), tally, options);
  if (cfg.solver == "aipfb") {
    const double w0 = p.g().strong_convexity() * (x0 - ref.x_star).squaredNorm() +
                      p.h().strong_convexity() * (y0 - ref.y_star).squaredNorm();
    return aipfb(p, x0, y0, n, std::max(w0, tiny), tally, options);
  }

  // Catalyst variants work on the equal-smoothness rescaling.
  const RescaledProblem rescaled = rescale_to_equal_smoothness(p);
  const double s = rescaled.scale;
  const SaddleReference ref_hat = reference_saddle(rescaled.problem);
  CatalystOptions copt;
  copt.reference = &ref_hat;
  copt.stop = [&](int, const Vector& x, const Vector& y) {
    return is_eps_saddle(ref, x, s * y, cfg.eps);
  };
  const double eps0 = std::max(squared_distance(ref_hat, x0, y0), tiny);
  RunTrace trace = cfg.solver == "catalyst-dippa"
                       ? catalyst_dippa(rescaled.problem, x0, y0, n, eps0, tally, copt)
                       : catalyst_aipfb(rescaled.problem, x0, y0, n, eps0, tally, copt);
  UnscaleY(trace, s, ref);
  return trace;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  validate(cfg.problem());
  if (std::find(kSolverNames.begin(), kSolverNames.end(), cfg.solver) == kSolverNames.end()) {
    Fail("solver", "unknown solver '" + cfg.solver + "'");
  }
  if (!(cfg.eps > 0) || !std::isfinite(cfg.eps)) Fail("eps", "must be positive and finite");
  if (cfg.max_outer < 1) Fail("max_outer", "must be at least 1");
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  static const std::vector<std::string> kKeys = {"seed", "dx",  "dy",     "Lx",  "Ly",
                                                 "mux",  "muy", "normA",  "solver",
                                                 "eps",  "max_outer", "out_path"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      Fail(key, "unknown key");
    }
  }
  ExperimentConfig cfg;
  auto get = [&](const char* key, auto& out) {
    if (!j.contains(key)) Fail(key, "missing");
    try {
      j.at(key).get_to(out);
    } catch (const nlohmann::json::exception& e) {
      Fail(key, e.what());
    }
  };
  get("seed", cfg.seed);
  get("dx", cfg.dx);
  get("dy", cfg.dy);
  get("Lx", cfg.Lx);
  get("Ly", cfg.Ly);
  get("mux", cfg.mux);
  get("muy", cfg.muy);
  get("normA", cfg.normA);
  get("solver", cfg.solver);
  get("eps", cfg.eps);
  get("max_outer", cfg.max_outer);
  if (j.contains("out_path")) get("out_path", cfg.out_path);
  validate(cfg);
  return cfg;
}

std::string to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["dx"] = cfg.dx;
  j["dy"] = cfg.dy;
  j["Lx"] = cfg.Lx;
  j["Ly"] = cfg.Ly;
  j["mux"] = cfg.mux;
  j["muy"] = cfg.muy;
  j["normA"] = cfg.normA;
  j["solver"] = cfg.solver;
  j["eps"] = cfg.eps;
  j["max_outer"] = cfg.max_outer;
  if (!cfg.out_path.empty()) j["out_path"] = cfg.out_path;
  return j.dump(2);
}

GeneratedProblem generate_problem(const ExperimentConfig& cfg) {
  validate(cfg);
  SaddleProblem p = make_problem(cfg.problem());
  SaddleReference ref = reference_saddle(p);
  return {std::move(p), std::move(ref)};
}

bool ExperimentResult::monitors_passed() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const PropertyReport& r) { return r.passed(); });
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const GeneratedProblem gen = generate_problem(cfg);
  ExperimentResult result;
  result.trace = RunSolver(cfg, gen);
  result.trace.params["eps_target"] = cfg.eps;
  result.trace.params["seed"] = static_cast<double>(cfg.seed);
  result.reached_eps = is_eps_saddle(gen.reference, result.trace.x, result.trace.y, cfg.eps);
  for (Monitor m : monitors_for(result.trace.solver)) {
    result.reports.push_back(monitor_bound(result.trace, m));
  }
  if (!cfg.out_path.empty()) write_csv_file(result.trace, cfg.out_path);
  return result;
}

std::vector<ExperimentResult> run_batch(const std::vector<ExperimentConfig>& configs,
                                        Execution execution) {
  const int n = static_cast<int>(configs.size());
  std::vector<ExperimentResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  for_each_index(n, execution, [&](int i) {
    try {
      results[i] = run_experiment(configs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<BoundCurvePoint> complexity_curves(double Lx, double Ly, double mux, double muy,
                                               const std::vector<double>& normA_grid,
                                               Combine combine) {
  if (normA_grid.empty()) throw Error(ErrorCode::kBadArgument, "grid must be nonempty");
  if (!(mux > 0 && muy > 0 && mux <= Lx && muy <= Ly)) {
    throw Error(ErrorCode::kBadArgument, "need 0 < mux <= Lx and 0 < muy <= Ly");
  }
  auto comb = [combine](std::initializer_list<double> terms) {
    double out = 0;
    for (double t : terms) out = combine == Combine::kMax ? std::max(out, t) : out + t;
    return out;
  };
  const double kx = Lx / mux;
  const double ky = Ly / muy;
  const double root = std::sqrt(mux * muy);
  std::vector<BoundCurvePoint> points;
  points.reserve(normA_grid.size());
  for (double a : normA_grid) {
    if (!(a >= 0)) throw Error(ErrorCode::kBadArgument, "grid values must be nonnegative");
    const double coupling = a / root;
    const double big_l = std::max({a, Lx, Ly});
    BoundCurvePoint pt;
    pt.normA = a;
    pt.upper_this_paper = comb({coupling, std::pow(kx * ky * (kx + ky), 0.25)});
    pt.upper_wang = comb({std::sqrt(a * big_l / (mux * muy)), std::sqrt(kx + ky)});
    pt.upper_lin = comb({coupling, std::sqrt(kx * ky)});
    pt.upper_nesterov = comb({a / mux, a / muy, kx, ky});
    pt.lower = comb({coupling, std::sqrt(kx + ky)});
    points.push_back(pt);
  }
  return points;
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kBadArgument, "bad grid value '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<double> out;
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto end = comma == std::string_view::npos ? text.size() : comma;
      out.push_back(number(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    return out;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw Error(ErrorCode::kBadArgument, "grid must look like lo:hi:logN or lo:hi:linN");
  }
  const double lo = number(text.substr(0, c1));
  const double hi = number(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string_view spec = text.substr(c2 + 1);
  const bool log_spaced = spec.starts_with("log");
  if (!log_spaced && !spec.starts_with("lin")) {
    throw Error(ErrorCode::kBadArgument, "grid spacing must be logN or linN");
  }
  const double count = number(spec.substr(3));
  const int n = static_cast<int>(count);
  if (n < 1 || n != count) throw Error(ErrorCode::kBadArgument, "grid count must be >= 1");
  if (hi < lo || lo < 0 || (log_spaced && lo <= 0)) {
    throw Error(ErrorCode::kBadArgument, "grid bounds must satisfy 0 <= lo <= hi (lo > 0 for log)");
  }
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                             : lo + t * (hi - lo));
  }
  // Pin the endpoints exactly.
  out.front() = lo;
  if (n > 1) out.back() = hi;
  return out;
}

void write_curves_csv(const std::vector<BoundCurvePoint>& points, std::ostream& out) {
  out << "normA,this_paper,wang,lin,nesterov,lower\n";
  for (const auto& p : points) {
    out << format_double(p.normA) << ',' << format_double(p.upper_this_paper) << ','
        << format_double(p.upper_wang) << ',' << format_double(p.upper_lin) << ','
        << format_double(p.upper_nesterov) << ',' << format_double(p.lower) << '\n';
  }
}

}  // namespace saddle
