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

#include <filesystem>

#include "hevs/simulate.hpp"
#include "support/oracles.hpp"

using namespace hevs;
namespace fs = std::filesystem;

TEST_CASE("mosaic of constant gray") {
  const PatternSpec& spec = default_pattern();
  const RgbImage gray(8, 8, 128, 128, 128);
  const RawImage raw = mosaic(gray, spec);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      CHECK(raw.at(x, y) == (spec.is_event(x, y) ? 0 : 514));
}

TEST_CASE("mosaic of pure red") {
  const PatternSpec& spec = default_pattern();
  const RgbImage red(8, 8, 255, 0, 0);
  const RawImage raw = mosaic(red, spec);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      if (spec.is_event(x, y)) {
        CHECK(raw.at(x, y) == 0);
      } else if (spec.underlying_color(x, y) == PixelClass::kRed) {
        CHECK(raw.at(x, y) == 1023);
      } else {
        CHECK(raw.at(x, y) == 0);
      }
    }
  }
}

TEST_CASE("mosaic matches a per-coordinate oracle on random images") {
  const PatternSpec& spec = default_pattern();
  Rng rng(21);
  for (int iter = 0; iter < 20; ++iter) {
    const RgbImage img = oracles::random_rgb(8, 8, rng);
    const RawImage raw = mosaic(img, spec);
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        uint16_t expected = 0;
        if (spec.classify(x, y) != PixelClass::kEvent) {
          int channel = 0;
          switch (spec.underlying_color(x, y)) {
            case PixelClass::kRed: channel = 0; break;
            case PixelClass::kGreen: channel = 1; break;
            case PixelClass::kBlue: channel = 2; break;
            default: break;
          }
          const double v = img.px(x, y)[channel] * 1023.0 / 255.0;
          expected = static_cast<uint16_t>(std::floor(v + 0.5));
        }
        CHECK(raw.at(x, y) == expected);
      }
    }
  }
}

TEST_CASE("inject_defects honors the exact count formula") {
  const PatternSpec& spec = default_pattern();
  Rng rng(5);
  const RawImage raw = oracles::random_raw(100, 100, rng);
  const MaskImage events = event_mask(spec, 100, 100);
  CHECK(events.count() == 1250);

  DefectModel model;
  model.density = 0.01;
  model.mode = DefectMode::kStuckHigh;
  model.seed = 99;
  const auto [out, mask] = inject_defects(raw, events, model);
  CHECK(mask.count() == 88);  // round(0.01 * 8750)

  // Altered positions only; events untouched; the rest bit-identical.
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      if (mask.get(x, y)) {
        CHECK(!events.get(x, y));
        CHECK(out.at(x, y) == 1023);
      } else {
        CHECK(out.at(x, y) == raw.at(x, y));
      }
    }
  }
}

TEST_CASE("inject_defects density zero is the identity") {
  const PatternSpec& spec = default_pattern();
  Rng rng(6);
  const RawImage raw = oracles::random_raw(16, 16, rng);
  DefectModel model;
  model.density = 0.0;
  const auto [out, mask] = inject_defects(raw, event_mask(spec, 16, 16), model);
  CHECK(out == raw);
  CHECK(mask.count() == 0);
}

TEST_CASE("inject_defects is deterministic per seed") {
  const PatternSpec& spec = default_pattern();
  Rng rng(8);
  const RawImage raw = oracles::random_raw(32, 32, rng);
  const MaskImage events = event_mask(spec, 32, 32);
  DefectModel model;
  model.density = 0.05;
  model.seed = 1234;
  const auto a = inject_defects(raw, events, model);
  const auto b = inject_defects(raw, events, model);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);

  model.seed = 1235;
  const auto c = inject_defects(raw, events, model);
  CHECK(a.second != c.second);
}

TEST_CASE("rotate and flip geometry") {
  RgbImage img(2, 1);
  img.px(0, 0)[0] = 10;
  img.px(1, 0)[0] = 20;

  const RgbImage cw = rotate90_cw(img, 1);
  CHECK(cw.width == 1);
  CHECK(cw.height == 2);
  CHECK(cw.px(0, 0)[0] == 10);
  CHECK(cw.px(0, 1)[0] == 20);

  const RgbImage full = rotate90_cw(img, 4);
  CHECK(full == img);

  const RgbImage flipped = flip_horizontal(img);
  CHECK(flipped.px(0, 0)[0] == 20);
  CHECK(flipped.px(1, 0)[0] == 10);
  CHECK(flip_horizontal(flipped) == img);
}

namespace {

// Seeds whose first two draws are (rotation, flip) == (0, no) / (1, *): found
// once by scanning with the pinned generator, then frozen here.
uint64_t find_seed_with_draws(int want_turns, int want_flip) {
  for (uint64_t seed = 0; seed < 4096; ++seed) {
    Rng rng(seed);
    const int turns = static_cast<int>(rng.bounded(4));
    const int flip = static_cast<int>(rng.bounded(2));
    if (turns == want_turns && (want_flip < 0 || flip == want_flip)) return seed;
  }
  FAIL("no seed found in range");
  return 0;
}

}  // namespace

TEST_CASE("augment with an identity draw equals mosaic plus inject") {
  const PatternSpec& spec = default_pattern();
  Rng rng(31);
  const RgbImage label = oracles::random_rgb(16, 12, rng);
  DefectModel model;
  model.density = 0.02;
  model.seed = 77;

  const uint64_t seed = find_seed_with_draws(0, 0);
  const SimulatedPair pair = augment(label, spec, model, seed);
  CHECK(pair.label == label);
  const auto direct = inject_defects(mosaic(label, spec), event_mask(spec, 16, 12), model);
  CHECK(pair.input == direct.first);
  CHECK(pair.defects == direct.second);
}

TEST_CASE("augment quarter turn swaps dimensions") {
  const PatternSpec& spec = default_pattern();
  Rng rng(32);
  const RgbImage label = oracles::random_rgb(20, 12, rng);
  const uint64_t seed = find_seed_with_draws(1, -1);
  const SimulatedPair pair = augment(label, spec, DefectModel{}, seed);
  CHECK(pair.label.width == 12);
  CHECK(pair.label.height == 20);
  CHECK(pair.input.width == 12);
  CHECK(pair.input.height == 20);
}

TEST_CASE("augment is deterministic and stays aligned") {
  const PatternSpec& spec = default_pattern();
  Rng rng(33);
  const RgbImage label = oracles::random_rgb(24, 16, rng);
  DefectModel model;
  model.density = 0.05;
  model.seed = 3;

  const SimulatedPair a = augment(label, spec, model, 555);
  const SimulatedPair b = augment(label, spec, model, 555);
  CHECK(a.input == b.input);
  CHECK(a.label == b.label);
  CHECK(a.defects == b.defects);

  // Alignment: the input is the mosaic of the returned label except at
  // defect positions, and defects never land on events.
  const RawImage clean = mosaic(a.label, spec);
  for (int y = 0; y < a.input.height; ++y) {
    for (int x = 0; x < a.input.width; ++x) {
      if (a.defects.get(x, y)) {
        CHECK(!a.events.get(x, y));
      } else {
        CHECK(a.input.at(x, y) == clean.at(x, y));
      }
    }
  }
}

TEST_CASE("generate_dataset writes a reproducible tree") {
  const PatternSpec& spec = default_pattern();
  const fs::path base = fs::temp_directory_path() / "hevs_sim_test";
  fs::remove_all(base);
  const fs::path labels_dir = base / "labels_in";
  fs::create_directories(labels_dir);

  Rng rng(41);
  for (int i = 0; i < 3; ++i) {
    const RgbImage img = oracles::random_rgb(16, 16, rng);
    write_rgb_file(img, labels_dir / ("img" + std::to_string(i) + ".png"));
  }

  DefectModel model;
  model.density = 0.01;
  model.seed = 7;
  const Manifest first = generate_dataset(labels_dir, base / "out_a", spec, model, 42);
  CHECK(first.scenes.size() == 3);
  for (const SceneEntry& s : first.scenes) {
    CHECK(fs::exists(base / "out_a" / s.raw));
    CHECK(fs::exists(base / "out_a" / s.label));
    CHECK(fs::exists(base / "out_a" / s.defects));
    CHECK(fs::exists(base / "out_a" / s.events));
  }

  const Manifest second = generate_dataset(labels_dir, base / "out_b", spec, model, 42);
  CHECK(first.scenes == second.scenes);
  for (const SceneEntry& s : first.scenes) {
    CHECK(read_file_bytes(base / "out_a" / s.raw) == read_file_bytes(base / "out_b" / s.raw));
    CHECK(read_file_bytes(base / "out_a" / s.label) ==
          read_file_bytes(base / "out_b" / s.label));
  }
  CHECK(read_file_bytes(base / "out_a" / "manifest.json") ==
        read_file_bytes(base / "out_b" / "manifest.json"));

  // Vacuous case: no labels, empty manifest, still a success.
  const fs::path empty_dir = base / "empty";
  fs::create_directories(empty_dir);
  const Manifest none = generate_dataset(empty_dir, base / "out_empty", spec, model, 1);
  CHECK(none.scenes.empty());
  CHECK(fs::exists(base / "out_empty" / "manifest.json"));

  fs::remove_all(base);
}
