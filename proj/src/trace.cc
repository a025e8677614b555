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

#include "saddle/trace.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saddle/error.h"

namespace saddle {
namespace {

using Field = std::optional<double> TraceRecord::*;

struct OptionalColumn {
  const char* name;
  Field field;
};

constexpr OptionalColumn kOptionalColumns[] = {
    {"bound_value", &TraceRecord::bound_value},
    {"eps_k", &TraceRecord::eps_k},
    {"delta_k", &TraceRecord::delta_k},
    {"bound_lhs", &TraceRecord::bound_lhs},
    {"inner_gap_g", &TraceRecord::inner_gap_g},
    {"inner_gap_h", &TraceRecord::inner_gap_h},
    {"inner_dist_sq", &TraceRecord::inner_dist_sq},
    {"z_dist_sq", &TraceRecord::z_dist_sq},
    {"w_dist_sq", &TraceRecord::w_dist_sq},
    {"remark_x", &TraceRecord::remark_x},
    {"remark_y", &TraceRecord::remark_y},
};

std::vector<std::string> SplitCommas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

uint64_t ParseCount(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": bad count '" + s + "'");
  }
}

}  // namespace

double RunTrace::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorCode::kMissingField, "trace lacks parameter '" + key + "'");
  }
  return it->second;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const RunTrace& trace, std::ostream& out) {
  out << "solver,k,n_grad_g,n_grad_h,n_Ay,n_ATx,dist_sq_x,dist_sq_y";
  for (const auto& col : kOptionalColumns) out << ',' << col.name;
  out << '\n';
  for (const auto& r : trace.records) {
    out << trace.solver << ',' << r.k << ',' << r.tally.n_grad_g << ',' << r.tally.n_grad_h
        << ',' << r.tally.n_Ay << ',' << r.tally.n_ATx << ',';
    if (trace.has_reference) {
      out << format_double(r.dist_sq_x) << ',' << format_double(r.dist_sq_y);
    } else {
      out << ',';
    }
    for (const auto& col : kOptionalColumns) {
      out << ',';
      if (const auto& v = r.*col.field) out << format_double(*v);
    }
    out << '\n';
  }
  for (const auto& [key, value] : trace.params) {
    out << "# param " << key << '=' << format_double(value) << '\n';
  }
  const OracleTally t = trace.totals();
  out << "# totals: " << t.n_grad_g << ' ' << t.n_grad_h << ' ' << t.n_Ay << ' ' << t.n_ATx
      << '\n';
}

std::string to_csv(const RunTrace& trace) {
  std::ostringstream ss;
  write_csv(trace, ss);
  return ss.str();
}

void write_csv_file(const RunTrace& trace, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open '" + tmp.string() + "' for writing");
    write_csv(trace, out);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::kIo, "rename to '" + path + "' failed: " + ec.message());
}

RunTrace read_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  std::map<std::string, size_t> index;
  auto cell = [&](const std::vector<std::string>& cells, const std::string& name) -> const std::string* {
    auto it = index.find(name);
    if (it == index.end() || it->second >= cells.size()) return nullptr;
    return &cells[it->second];
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(1);
      std::istringstream ss(body);
      std::string tag;
      ss >> tag;
      if (tag == "param") {
        std::string kv;
        ss >> kv;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": bad param line");
        }
        trace.params[kv.substr(0, eq)] = ParseDouble(kv.substr(eq + 1), line_no);
      } else if (tag == "totals:") {
        std::string a, b, c, d;
        ss >> a >> b >> c >> d;
        trace.footer_totals = OracleTally{ParseCount(a, line_no), ParseCount(b, line_no),
                                          ParseCount(c, line_no), ParseCount(d, line_no)};
      }
      continue;
    }
    if (header.empty()) {
      header = SplitCommas(line);
      for (size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
      for (const char* required : {"solver", "k", "n_grad_g", "n_grad_h", "n_Ay", "n_ATx",
                                   "dist_sq_x", "dist_sq_y"}) {
        if (!index.count(required)) {
          throw Error(ErrorCode::kMissingField, std::string("CSV lacks column ") + required);
        }
      }
      continue;
    }
    const auto cells = SplitCommas(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(header.size()) + " cells");
    }
    TraceRecord r;
    trace.solver = *cell(cells, "solver");
    r.k = static_cast<int>(ParseCount(*cell(cells, "k"), line_no));
    r.tally = OracleTally{ParseCount(*cell(cells, "n_grad_g"), line_no),
                          ParseCount(*cell(cells, "n_grad_h"), line_no),
                          ParseCount(*cell(cells, "n_Ay"), line_no),
                          ParseCount(*cell(cells, "n_ATx"), line_no)};
    const std::string* dx = cell(cells, "dist_sq_x");
    const std::string* dy = cell(cells, "dist_sq_y");
    if (dx && !dx->empty() && dy && !dy->empty()) {
      trace.has_reference = true;
      r.dist_sq_x = ParseDouble(*dx, line_no);
      r.dist_sq_y = ParseDouble(*dy, line_no);
    }
    for (const auto& col : kOptionalColumns) {
      const std::string* v = cell(cells, col.name);
      if (v && !v->empty()) r.*col.field = ParseDouble(*v, line_no);
    }
    trace.records.push_back(std::move(r));
  }
  if (header.empty()) throw Error(ErrorCode::kIo, "CSV has no header row");
  return trace;
}

RunTrace read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace saddle
