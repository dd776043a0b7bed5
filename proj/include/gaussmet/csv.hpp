// Copyright 2026 The gaussmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweep CSV format:
//
//   probe,channel_param,tau,qfi_total,qfi_sigma,qfi_purity,qfi_disp,coherence,purity,gain_db
//
// Floats carry 17 significant digits; an undefined gain is an empty field.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gaussmet/errors.hpp"
#include "gaussmet/sweep.hpp"

namespace gaussmet {

inline constexpr std::string_view kCsvHeader =
    "probe,channel_param,tau,qfi_total,qfi_sigma,qfi_purity,qfi_disp,coherence,purity,gain_db";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.probe) << ',' << format_double(r.channel_param) << ',' << format_double(r.tau)
        << ',' << format_double(r.qfi.total) << ',' << format_double(r.qfi.term_sigma) << ','
        << format_double(r.qfi.term_purity) << ',' << format_double(r.qfi.term_displacement) << ','
        << format_double(r.coherence) << ',' << format_double(r.purity) << ',';
    if (r.gain_db) out << format_double(*r.gain_db);
    out << '\n';
  }
}

namespace detail {

inline double parse_double(const std::string& field, std::size_t line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (field.empty() || end != begin + field.size()) {
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InvalidArgument("csv: unexpected header '" + line + "'");

  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 10) {
      throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected 10 fields");
    }
    SweepRecord r;
    r.probe = parse_probe_kind(fields[0]);
    r.channel_param = detail::parse_double(fields[1], line_no);
    r.tau = detail::parse_double(fields[2], line_no);
    r.qfi.total = detail::parse_double(fields[3], line_no);
    r.qfi.term_sigma = detail::parse_double(fields[4], line_no);
    r.qfi.term_purity = detail::parse_double(fields[5], line_no);
    r.qfi.term_displacement = detail::parse_double(fields[6], line_no);
    r.coherence = detail::parse_double(fields[7], line_no);
    r.purity = detail::parse_double(fields[8], line_no);
    if (!fields[9].empty()) r.gain_db = detail::parse_double(fields[9], line_no);
    records.push_back(r);
  }
  return records;
}

/// Recomputes gain_db of every row against the vacuum row at the same
/// (channel_param, tau). Rows without a vacuum reference get no gain.
inline void recompute_gain(std::vector<SweepRecord>& records) {
  std::map<std::pair<double, double>, double> reference;
  for (const auto& r : records) {
    if (r.probe == ProbeKind::kVacuum) reference[{r.channel_param, r.tau}] = r.qfi.total;
  }
  for (auto& r : records) {
    const auto it = reference.find({r.channel_param, r.tau});
    r.gain_db = it == reference.end() ? std::nullopt : optional_gain(r.qfi.total, it->second);
  }
}

}  // namespace gaussmet
