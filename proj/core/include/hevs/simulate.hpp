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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hevs/pattern.hpp"
#include "hevs/raw_io.hpp"

namespace hevs {

enum class DefectMode : uint8_t {
  kStuckLow,   // defective sample reads 0
  kStuckHigh,  // defective sample reads 1023
  kUniform,    // defective sample reads a seeded uniform draw from [0, 1023]
};

const char* defect_mode_name(DefectMode m);
DefectMode parse_defect_mode(const std::string& name);

struct DefectModel {
  double density = 0.001;  // fraction of non-event pixels, in [0, 1]
  DefectMode mode = DefectMode::kUniform;
  uint64_t seed = 0;
};

/// One simulated scene: mosaiced input with injected defects, the aligned RGB
/// ground truth, and the defect/event masks. defects and events are disjoint.
struct SimulatedPair {
  RawImage input;
  RgbImage label;
  MaskImage defects;
  MaskImage events;
};

/// Samples an RGB image through the sensor pattern: each non-event position
/// takes its cell color's channel scaled 8->10 bit; event positions read 0.
/// The 0 at event positions is a sentinel only - every consumer recovers the
/// positions from the PatternSpec, never from the value.
RawImage mosaic(const RgbImage& rgb, const PatternSpec& spec);

/// Alters exactly round(density * non_event_count) positions, drawn uniformly
/// without replacement from the non-event positions (partial Fisher-Yates over
/// the row-major position list, seeded). Returns the altered frame and a mask
/// of exactly the altered positions.
std::pair<RawImage, MaskImage> inject_defects(const RawImage& raw, const MaskImage& events,
                                              const DefectModel& model);

/// Seeded augmentation draw: rotation in {0,90,180,270} degrees clockwise,
/// then horizontal flip in {no,yes}; the transformed label is mosaiced and
/// defect-injected (model.seed drives defect placement, `seed` only the
/// geometric draw). Input and label stay aligned.
SimulatedPair augment(const RgbImage& label, const PatternSpec& spec, const DefectModel& model,
                      uint64_t seed);

// Geometric helpers used by augment; exposed for tests and tooling.
RgbImage rotate90_cw(const RgbImage& img, int quarter_turns);
RgbImage flip_horizontal(const RgbImage& img);

/// Simulates every *.png under labels_dir (sorted by filename for stable
/// indexing) into out_dir: input/<stem>.bin, labels/<stem>.png,
/// masks/<stem>_defects.png, masks/<stem>_events.png and a manifest.json.
/// Per-image seeds are derived as seed XOR index (and model.seed XOR index),
/// so the output is reproducible and independent of processing order.
Manifest generate_dataset(const std::filesystem::path& labels_dir,
                          const std::filesystem::path& out_dir, const PatternSpec& spec,
                          const DefectModel& model, uint64_t seed);

}  // namespace hevs
