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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hevs/image.hpp"

namespace hevs {

// Rounding convention used everywhere integers are produced:
// round half away from zero.
inline long round_half_away(double v) { return std::lround(v); }

/// [0,1023] -> [0.0,1.0] linear working range.
inline double raw_to_unit(uint16_t v) { return v / 1023.0; }
inline uint16_t unit_to_raw(double u) {
  long v = round_half_away(u * 1023.0);
  if (v < 0) v = 0;
  if (v > kRawMax) v = kRawMax;
  return static_cast<uint16_t>(v);
}

/// Linear 8-bit <-> 10-bit sample scaling (255/1023 and back).
inline uint16_t sample_8to10(uint8_t v) {
  return static_cast<uint16_t>(round_half_away(v * 1023.0 / 255.0));
}
inline uint8_t sample_10to8(double v) {
  long r = round_half_away(v * 255.0 / 1023.0);
  if (r < 0) r = 0;
  if (r > kRgbMax) r = kRgbMax;
  return static_cast<uint8_t>(r);
}

// ---------------------------------------------------------------------------
// .bin frames: headerless, row-major, little-endian unsigned 16-bit words
// holding 10-bit values. Dimensions travel out of band (CLI flags or the
// dataset manifest).

/// Decodes a .bin byte stream. Throws LengthMismatch if the stream is not
/// exactly 2*width*height bytes and RangeError on any word above 1023.
RawImage read_raw(std::span<const uint8_t> bytes, int width, int height);
RawImage read_raw_file(const std::filesystem::path& file, int width, int height);

/// Inverse of read_raw; deterministic byte-for-byte.
std::vector<uint8_t> write_raw(const RawImage& img);
void write_raw_file(const RawImage& img, const std::filesystem::path& file);

// ---------------------------------------------------------------------------
// PNG: results and labels are 8-bit RGB; masks are 8-bit grayscale with
// 0 = clear, 255 = set. Round-trips are lossless.

/// Decodes an 8-bit PNG into RGB (grayscale and palette inputs are expanded,
/// alpha is stripped). Throws UnsupportedBitDepth for 16-bit input and
/// DecodeError for anything libpng rejects.
RgbImage read_rgb(std::span<const uint8_t> png_bytes);
RgbImage read_rgb_file(const std::filesystem::path& file);

std::vector<uint8_t> write_rgb(const RgbImage& img);
void write_rgb_file(const RgbImage& img, const std::filesystem::path& file);

MaskImage read_mask(std::span<const uint8_t> png_bytes);
MaskImage read_mask_file(const std::filesystem::path& file);
std::vector<uint8_t> write_mask(const MaskImage& mask);
void write_mask_file(const MaskImage& mask, const std::filesystem::path& file);

// ---------------------------------------------------------------------------
// Dataset manifest: JSON listing per-scene file paths and dimensions, since
// .bin carries none. Paths are relative to the manifest's directory.

struct SceneEntry {
  std::string name;     // filename stem, unique within a manifest
  std::string raw;      // .bin input
  std::string label;    // .png ground truth
  std::string defects;  // mask png (may be empty)
  std::string events;   // mask png (may be empty)
  int width = 0;
  int height = 0;

  bool operator==(const SceneEntry&) const = default;
};

struct Manifest {
  std::string pattern;  // canonical 4-line tile text
  uint64_t seed = 0;
  double density = 0.0;
  std::string defect_mode;
  std::vector<SceneEntry> scenes;

  bool operator==(const Manifest&) const = default;
};

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const std::string& text);
Manifest load_manifest(const std::filesystem::path& file);
void save_manifest(const Manifest& m, const std::filesystem::path& file);

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& file);
void write_file_bytes(std::span<const uint8_t> bytes, const std::filesystem::path& file);

}  // namespace hevs
