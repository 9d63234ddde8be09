// Copyright 2026 The ghzlab Authors
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
#include "ghzlab/json_format.hpp"

#include <cmath>
#include <cstdio>

namespace ghzlab {
namespace {

void write_string(const std::string& s, std::string& out) {
  // nlohmann's own escaping, so strings round-trip through its parser.
  out += Json(s).dump();
}

void write(const Json& node, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (node.type()) {
    case Json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(it.key(), out);
        out += ": ";
        write(it.value(), depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; they are bit and amplitude lists.
      bool scalars = true;
      for (const auto& v : node) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < node.size(); ++i) {
          if (i) out += ", ";
          write(node[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(node[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(node.get<double>());
      return;
    default:
      out += node.dump();
      return;
  }
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return "0";  // folds -0 as well
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_report(const Json& doc) {
  std::string out;
  write(doc, 0, out);
  out += "\n";
  return out;
}

}  // namespace ghzlab
