// Copyright 2026 The LatentSteg Authors
//
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
//
///////////////////////////////////////////////////////////////////////////////

#include "lsteg/params.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lsteg/errors.h"

namespace lsteg {

std::string_view SchedulerName(Scheduler s) {
  return s == Scheduler::kDual ? "dual" : "single";
}

std::vector<std::size_t> DefaultLatentShape(std::size_t latent_count) {
  if (latent_count % 4 == 0) {
    std::size_t side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(latent_count / 4))));
    if (side * side * 4 == latent_count) return {4, side, side};
  }
  return {latent_count};
}

void EmbedParams::Validate() const {
  if (!std::isfinite(tau) || tau < 0) {
    throw InvalidParams("tau must be finite and >= 0");
  }
  if (rho < 1) throw InvalidParams("rho must be >= 1");
  if (msg_len_bytes < 1) throw InvalidParams("msg_len_bytes must be >= 1");
  if (msg_len_bytes > 0xffff) {
    throw InvalidParams("msg_len_bytes must fit the 16-bit length prefix");
  }
  if (tag_len_bytes > 64) {
    throw InvalidParams("tag_len_bytes cannot exceed the 64-byte MAC");
  }
  if (latent_count < 1) throw InvalidParams("latent_count must be >= 1");
  std::size_t product = 1;
  for (std::size_t d : latent_shape) product *= d;
  if (latent_shape.empty() || product != latent_count) {
    throw InvalidParams("product(latent_shape) must equal latent_count");
  }
}

EmbedParams MakeEmbedParams(double tau, int rho, Scheduler scheduler,
                            std::size_t msg_len_bytes,
                            std::size_t tag_len_bytes, std::size_t max_errs,
                            std::size_t latent_count) {
  EmbedParams p;
  p.tau = tau;
  p.rho = rho;
  p.scheduler = scheduler;
  p.msg_len_bytes = msg_len_bytes;
  p.tag_len_bytes = tag_len_bytes;
  p.max_errs = max_errs;
  p.latent_count = latent_count;
  p.latent_shape = DefaultLatentShape(latent_count);
  p.Validate();
  return p;
}

namespace {

// Splits one CSV record. Quoted fields may contain commas and doubled quotes.
std::vector<std::string> SplitCsvLine(std::string_view line,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      if (!cur.empty() || was_quoted) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": stray quote inside field");
      }
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      if (was_quoted) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": text after closing quote");
      }
      cur.push_back(c);
    }
  }
  if (in_quotes) {
    throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(cur));
  return fields;
}

template <typename T>
T ParseNumber(const std::string& s, std::string_view what, std::size_t line_no) {
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid " +
                     std::string(what) + " '" + s + "'");
  }
  return value;
}

std::string QuoteIfNeeded(const std::string& field) {
  // The format is strictly one record per line.
  if (field.find_first_of("\r\n") != std::string::npos) {
    throw InvalidParams("table fields cannot contain line breaks");
  }
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

ParamTable LoadTable(std::string_view text) {
  ParamTable table;
  std::set<std::int64_t> seen;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kParamTableHeader) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header '" +
                         std::string(kParamTableHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    auto f = SplitCsvLine(line, line_no);
    if (f.size() != 10) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                       std::to_string(f.size()));
    }
    ParamTableRow row;
    row.row_id = ParseNumber<std::int64_t>(f[0], "row_id", line_no);
    row.model_id = f[1];
    row.prompt = f[2];
    EmbedParams& p = row.params;
    p.tau = ParseNumber<double>(f[3], "tau", line_no);
    p.rho = ParseNumber<int>(f[4], "rho", line_no);
    if (f[5] == "single") {
      p.scheduler = Scheduler::kSingle;
    } else if (f[5] == "dual") {
      p.scheduler = Scheduler::kDual;
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                       ": scheduler must be 'single' or 'dual'");
    }
    p.msg_len_bytes = ParseNumber<std::size_t>(f[6], "msg_len_bytes", line_no);
    p.tag_len_bytes = ParseNumber<std::size_t>(f[7], "tag_len_bytes", line_no);
    p.max_errs = ParseNumber<std::size_t>(f[8], "max_errs", line_no);
    p.latent_count = ParseNumber<std::size_t>(f[9], "latent_count", line_no);
    p.latent_shape = DefaultLatentShape(p.latent_count);
    try {
      p.Validate();
    } catch (const InvalidParams& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(row.row_id).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate row_id " +
                       std::to_string(row.row_id));
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError("parameter table has no rows");
  return table;
}

ParamTable LoadTable(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return LoadTable(ss.str());
}

ParamTable LoadTableFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open parameter table '" + path + "'");
  return LoadTable(in);
}

std::string SerializeTable(const ParamTable& table) {
  std::string out(kParamTableHeader);
  out.push_back('\n');
  for (const auto& row : table.rows) {
    const EmbedParams& p = row.params;
    out += std::to_string(row.row_id) + ',' + QuoteIfNeeded(row.model_id) +
           ',' + QuoteIfNeeded(row.prompt) + ',' + FormatDouble(p.tau) + ',' +
           std::to_string(p.rho) + ',' + std::string(SchedulerName(p.scheduler)) +
           ',' + std::to_string(p.msg_len_bytes) + ',' +
           std::to_string(p.tag_len_bytes) + ',' + std::to_string(p.max_errs) +
           ',' + std::to_string(p.latent_count) + '\n';
  }
  return out;
}

}  // namespace lsteg
