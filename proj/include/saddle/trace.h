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

#ifndef SADDLE_TRACE_H_
#define SADDLE_TRACE_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saddle/numerics.h"
#include "saddle/problem.h"

namespace saddle {

// One outer iteration. Row k = 0 describes the starting point. Optional
// fields are present only for solvers that define them.
struct TraceRecord {
  int k = 0;
  Vector x;
  Vector y;
  double dist_sq_x = 0;
  double dist_sq_y = 0;
  OracleTally tally;
  std::optional<double> bound_value;
  std::optional<double> eps_k;
  std::optional<double> delta_k;
  // Left-hand side of the solver's primary bound (AGD gap, weighted
  // distance for APFB/AIPFB, distance sum for DPPA/DIPPA).
  std::optional<double> bound_lhs;
  std::optional<double> inner_gap_g;
  std::optional<double> inner_gap_h;
  std::optional<double> inner_dist_sq;
  std::optional<double> z_dist_sq;
  std::optional<double> w_dist_sq;
  std::optional<double> remark_x;
  std::optional<double> remark_y;
};

struct RunTrace {
  std::string solver;
  std::map<std::string, double> params;
  std::vector<TraceRecord> records;
  Vector x;  // final iterate
  Vector y;
  bool has_reference = false;
  // Set when the trace was parsed from CSV.
  std::optional<OracleTally> footer_totals;

  const TraceRecord& back() const { return records.back(); }
  OracleTally totals() const { return records.empty() ? OracleTally{} : records.back().tally; }
  double param(const std::string& key) const;
};

// Trace CSV. Header row, one row per record, then "# param key=value"
// lines and a final "# totals: g h Ay ATx" line.
void write_csv(const RunTrace& trace, std::ostream& out);
std::string to_csv(const RunTrace& trace);
// Writes to a temporary sibling file and renames it into place.
void write_csv_file(const RunTrace& trace, const std::string& path);

// Parses a trace CSV (iterates are not persisted, so x/y stay empty).
RunTrace read_csv(std::istream& in);
RunTrace read_csv_file(const std::string& path);

std::string format_double(double v);

}  // namespace saddle

#endif  // SADDLE_TRACE_H_
