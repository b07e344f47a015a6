// Copyright 2026 The HybridEVS Toolkit Authors
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

#include <doctest.h>

#include <map>

#include "hevs/pattern.hpp"

using namespace hevs;

TEST_CASE("classify follows the default tile") {
  const PatternSpec& spec = default_pattern();
  CHECK(spec.classify(0, 0) == PixelClass::kRed);
  CHECK(spec.classify(4, 4) == spec.classify(0, 0));
  for (const auto& [row, col] : spec.event_positions())
    CHECK(spec.classify(col, row) == PixelClass::kEvent);
}

TEST_CASE("classify is periodic with period 4") {
  const PatternSpec& spec = default_pattern();
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x)
      for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
          CHECK(spec.classify(x + 4 * k, y + 4 * m) == spec.classify(x, y));
}

TEST_CASE("event_mask counts") {
  const PatternSpec& spec = default_pattern();
  CHECK(event_mask(spec, 4, 4).count() == 2);
  CHECK(event_mask(spec, 8, 8).count() == 8);
  // Sub-tile crop: depends on whether tile[0][0] is an event.
  const size_t one = event_mask(spec, 1, 1).count();
  CHECK(one == (spec.classify(0, 0) == PixelClass::kEvent ? 1 : 0));
  CHECK(event_mask(spec, 100, 100).count() == 100 * 100 * 2 / 16);
}

TEST_CASE("underlying_color matches classify off events and the cell on events") {
  const PatternSpec& spec = default_pattern();
  CHECK(spec.classify(2, 0) == PixelClass::kGreen);
  CHECK(spec.underlying_color(2, 0) == PixelClass::kGreen);
  // Default tile has one event inside the R cell at (1,1) and one in the
  // B cell at (2,2).
  CHECK(spec.classify(1, 1) == PixelClass::kEvent);
  CHECK(spec.underlying_color(1, 1) == PixelClass::kRed);
  CHECK(spec.classify(2, 2) == PixelClass::kEvent);
  CHECK(spec.underlying_color(2, 2) == PixelClass::kBlue);

  std::map<PixelClass, int> histogram;
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) ++histogram[spec.underlying_color(x, y)];
  CHECK(histogram[PixelClass::kRed] == 4);
  CHECK(histogram[PixelClass::kGreen] == 8);
  CHECK(histogram[PixelClass::kBlue] == 4);
}

TEST_CASE("pattern text round-trips") {
  const PatternSpec& spec = default_pattern();
  CHECK(parse_pattern(spec.to_string()) == spec);

  const std::string alt =
      "BBGG\n"
      "BEGG\n"
      "GGER\n"
      "GGRR\n";
  const PatternSpec parsed = parse_pattern(alt);
  CHECK(parsed.to_string() == alt);
  CHECK(parsed.underlying_color(0, 0) == PixelClass::kBlue);
}

TEST_CASE("parse_pattern rejects invalid tiles") {
  // Wrong event count.
  CHECK_THROWS_AS(parse_pattern("RRGG\nRRGG\nGGBB\nGGBB\n"), Error);
  CHECK_THROWS_AS(parse_pattern("ERGG\nREGG\nGGEB\nGGBB\n"), Error);
  // Mixed colors inside one 2x2 cell.
  CHECK_THROWS_AS(parse_pattern("RGGG\nREGG\nGGEB\nGGBB\n"), Error);
  // Cell color multiset not {R, G, G, B}.
  CHECK_THROWS_AS(parse_pattern("RRRR\nREER\nGGBB\nGGBB\n"), Error);
  // Malformed text.
  CHECK_THROWS_AS(parse_pattern("RRGG\nREGG\nGGEB\n"), Error);
  CHECK_THROWS_AS(parse_pattern("RRGG\nREGG\nGGEB\nGGXB\n"), Error);
  CHECK_THROWS_AS(parse_pattern("RRGGG\nREGG\nGGEB\nGGBB\n"), Error);
  CHECK_THROWS_AS(parse_pattern(""), Error);
}

TEST_CASE("errors carry their code") {
  try {
    parse_pattern("");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidPattern);
    CHECK(std::string(e.what()).find("InvalidPattern") == 0);
  }
}
