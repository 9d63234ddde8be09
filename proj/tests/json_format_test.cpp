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
#include <limits>
#include <random>

#include "gtest/gtest.h"

namespace ghzlab {
namespace {

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1e-9), "1.0000000000000001e-09");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
  EXPECT_EQ(format_double(std::nan("")), "null");
}

TEST(FormatDouble, ParsesBackToTheSameDouble) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = unit(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(DumpReport, LayoutIsStable) {
  Json doc{{"version", 1}, {"bits", Json::array({0, 1})}, {"nested", Json{{"x", 0.5}, {"ok", true}}},
           {"list", Json::array({Json{{"a", 1}}})}, {"empty", Json::array()}, {"name", "q\"s"}};
  const std::string expected =
      "{\n"
      "  \"version\": 1,\n"
      "  \"bits\": [0, 1],\n"
      "  \"nested\": {\n"
      "    \"x\": 0.5,\n"
      "    \"ok\": true\n"
      "  },\n"
      "  \"list\": [\n"
      "    {\n"
      "      \"a\": 1\n"
      "    }\n"
      "  ],\n"
      "  \"empty\": [],\n"
      "  \"name\": \"q\\\"s\"\n"
      "}\n";
  EXPECT_EQ(dump_report(doc), expected);
  EXPECT_EQ(Json::parse(dump_report(doc)), doc);
}

}  // namespace
}  // namespace ghzlab
