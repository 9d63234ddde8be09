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
#pragma once

#include <string>

#include "json.hpp"

namespace ghzlab {

using Json = nlohmann::ordered_json;

/// Version stamped into every report and transcript.
inline constexpr int kReportVersion = 1;

// Serializes a document with a fixed layout: two-space indentation, keys in
// insertion order, floats printed with 17 significant digits ("%.17g").
// Non-finite floats become null. The output is byte-stable for a given
// document, which the determinism checks rely on.
std::string dump_report(const Json& doc);

/// Formats one double the way dump_report does.
std::string format_double(double value);

}  // namespace ghzlab
