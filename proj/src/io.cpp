// Copyright 2026 The switchgrade Authors
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

#include "switchgrade/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "switchgrade/error.hpp"

namespace switchgrade {

std::string format_number(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void dump(const Json& v, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent > 0) out.append(static_cast<std::size_t>(d * indent), ' ');
  };
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), indent, depth + 1, out);
      }
      out += nl;
      pad(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& e : v) {
        if (!first) {
          out += ",";
          out += flat ? (indent > 0 ? " " : "") : nl;
        }
        first = false;
        if (!flat) pad(depth + 1);
        dump(e, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        pad(depth);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line numbers of the opening brace of each top-level array element.
std::vector<std::size_t> element_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  int depth = 0;
  bool in_string = false;
  bool expect = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
      if (depth == 1 && expect) {
        lines.push_back(line);
        expect = false;
      }
      continue;
    }
    if (c == '[' || c == '{') {
      if (depth == 1 && expect) {
        lines.push_back(line);
        expect = false;
      }
      if (depth == 0) expect = true;
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
    } else if (c == ',' && depth == 1) {
      expect = true;
    } else if (depth == 1 && expect && !std::isspace(static_cast<unsigned char>(c))) {
      lines.push_back(line);
      expect = false;
    }
  }
  return lines;
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump(value, indent, 0, out);
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int d = traj.states.empty() ? 0 : traj.states.front().dim();
  out << "t";
  for (int i = 1; i <= d; ++i) out << ",x" << i;
  out << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << format_number(traj.times[k]);
    for (double x : traj.states[k].entries()) out << ',' << format_number(x);
    out << '\n';
  }
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::io, "cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) fail(Errc::io, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Schedule parse_schedule(std::string_view text, std::size_t generators) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse, "schedule line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " +
                          e.what());
  }
  if (!doc.is_array()) fail(Errc::parse, "schedule line 1: expected a JSON array of pieces");
  const auto lines = element_lines(text);
  Schedule sched(generators);
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string where =
        "schedule line " + std::to_string(k < lines.size() ? lines[k] : 1) + " (piece " + std::to_string(k) + "): ";
    const Json& piece = doc[k];
    if (!piece.is_object()) fail(Errc::parse, where + "expected an object");
    if (!piece.contains("duration") || !piece["duration"].is_number()) {
      fail(Errc::parse, where + "missing numeric \"duration\"");
    }
    if (!piece.contains("weights") || !piece["weights"].is_array()) {
      fail(Errc::parse, where + "missing \"weights\" array");
    }
    const double duration = piece["duration"].get<double>();
    if (!(duration > 0.0) || !std::isfinite(duration)) fail(Errc::parse, where + "duration must be positive");
    const Json& w = piece["weights"];
    if (w.size() != generators) {
      fail(Errc::parse, where + "expected " + std::to_string(generators) + " weights, got " +
                            std::to_string(w.size()));
    }
    std::vector<double> weights;
    double sum = 0.0;
    for (const auto& x : w) {
      if (!x.is_number()) fail(Errc::parse, where + "weights must be numbers");
      const double v = x.get<double>();
      if (!std::isfinite(v) || v < -1e-9) fail(Errc::parse, where + "weights must be nonnegative");
      weights.push_back(std::max(0.0, v));
      sum += std::max(0.0, v);
    }
    if (std::abs(sum - 1.0) > 1e-9) fail(Errc::parse, where + "weights must sum to 1");
    for (double& v : weights) v /= sum;
    sched.append(duration, weights);
  }
  return sched;
}

Json polar_table_to_json(const PolarTable& table) {
  Json j;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < table.nodes().size(); ++i) {
    pairs.push_back(Json::array({table.nodes()[i], std::exp(table.log_radius()[i])}));
  }
  j["nodes"] = std::move(pairs);
  j["log_radius"] = table.log_radius();
  j["dlog_radius"] = table.slope();
  return j;
}

PolarTable polar_table_from_json(const Json& j) {
  try {
    std::vector<double> nodes;
    for (const auto& p : j.at("nodes")) nodes.push_back(p.at(0).get<double>());
    return PolarTable(std::move(nodes), j.at("log_radius").get<std::vector<double>>(),
                      j.at("dlog_radius").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse, std::string("polar table: ") + e.what());
  }
}

}  // namespace switchgrade
