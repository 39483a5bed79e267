// Copyright 2026 The rieszmix Authors
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

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace fixtures;

namespace {

Error parse_error(const std::string& text) {
  try {
    parse_space_spec(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse failure";
  return Error(ErrorKind::io, "");
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(to_string(parse_rational("-6/8")), "-3/4");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.5"), Error);
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_THROW(parse_rational("1/-2"), Error);
}

TEST(SpaceSpec, S1FixtureFile) {
  auto doc = parse_space_spec(cli::read_file(fixture_path("s1.json")));
  EXPECT_EQ(doc.space.block_count(), 1U);
  EXPECT_EQ(doc.space.total_mass(), Rational(1));
  EXPECT_EQ(doc.partition("C1").cell_count(), 2U);
  EXPECT_THROW(doc.partition("nope"), Error);
}

TEST(SpaceSpec, ZeroDenominatorHasFieldPath) {
  auto e = parse_error(R"({"points": [{"id": "a", "weight": "1"}, {"id": "b", "weight": "1/0"}], "blocks": [["a", "b"]]})");
  EXPECT_EQ(e.kind(), ErrorKind::parse);
  EXPECT_NE(std::string(e.what()).find("points[1].weight"), std::string::npos) << e.what();
}

TEST(SpaceSpec, UnknownIdNamed) {
  auto e = parse_error(R"({"points": [{"id": "a", "weight": "1"}], "blocks": [["a"]], "partitions": {"P": [["a", "z"]]}})");
  EXPECT_EQ(e.kind(), ErrorKind::unknown_id);
  EXPECT_NE(std::string(e.what()).find("\"z\""), std::string::npos) << e.what();
  EXPECT_NE(std::string(e.what()).find("partitions.P"), std::string::npos) << e.what();
}

TEST(SpaceSpec, SyntaxErrorHasLine) {
  auto e = parse_error("{\n  \"points\": [\n  oops\n]}");
  EXPECT_EQ(e.kind(), ErrorKind::parse);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
}

TEST(SpaceSpec, RejectsUnknownFieldsAndGaps) {
  EXPECT_EQ(parse_error(R"({"points": [], "blocks": [], "extra": 1})").kind(), ErrorKind::parse);
  EXPECT_EQ(parse_error(R"({"points": [{"id": "a", "weight": "1", "w": 2}], "blocks": [["a"]]})").kind(), ErrorKind::parse);
  EXPECT_EQ(parse_error(R"({"points": [{"id": "a", "weight": "0"}], "blocks": [["a"]]})").kind(),
            ErrorKind::nonpositive_weight);
  EXPECT_EQ(parse_error(R"({"points": [{"id": "a", "weight": "1"}, {"id": "b", "weight": "1"}], "blocks": [["a", "b"]],
                           "functions": {"f": {"a": "1"}}})")
                .kind(),
            ErrorKind::parse);
}

TEST(SpaceSpec, RoundTripIsStable) {
  for (const char* name : {"s1.json", "s2.json"}) {
    auto doc = parse_space_spec(cli::read_file(fixture_path(name)));
    std::string once = serialize_space_spec(doc);
    std::string twice = serialize_space_spec(parse_space_spec(once));
    EXPECT_EQ(once, twice);
  }
  auto doc = instance_document(random_instance({4, 9, 3, 3, 7, 5}));
  std::string text = serialize_space_spec(doc);
  auto back = parse_space_spec(text);
  EXPECT_EQ(serialize_space_spec(back), text);
  EXPECT_EQ(back.space.weights().size(), doc.space.size());
  for (std::size_t i = 0; i < doc.space.size(); ++i) EXPECT_EQ(back.space.weight(i), doc.space.weight(i));
}
