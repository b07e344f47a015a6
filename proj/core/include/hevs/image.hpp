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

#include <cassert>
#include <cstdint>
#include <vector>

#include "hevs/error.hpp"

namespace hevs {

inline constexpr int kRawMax = 1023;  // 10-bit sample ceiling
inline constexpr int kRgbMax = 255;

/// Single-channel mosaic frame; samples are 10-bit values stored row-major
/// with a top-left origin.
struct RawImage {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> samples;  // width * height entries, each <= kRawMax

  RawImage() = default;
  RawImage(int w, int h, uint16_t fill = 0)
      : width(w), height(h),
        samples(static_cast<size_t>(w) * static_cast<size_t>(h), fill) {
    if (w <= 0 || h <= 0) raise(Errc::kInvalidArgument, "raw dimensions must be positive");
  }

  uint16_t at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return samples[static_cast<size_t>(y) * width + x];
  }
  uint16_t& at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return samples[static_cast<size_t>(y) * width + x];
  }

  bool operator==(const RawImage&) const = default;
};

/// Interleaved 8-bit RGB, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3 entries

  RgbImage() = default;
  RgbImage(int w, int h, uint8_t r = 0, uint8_t g = 0, uint8_t b = 0)
      : width(w), height(h),
        pixels(static_cast<size_t>(w) * static_cast<size_t>(h) * 3) {
    if (w <= 0 || h <= 0) raise(Errc::kInvalidArgument, "rgb dimensions must be positive");
    for (size_t i = 0; i < pixels.size(); i += 3) {
      pixels[i] = r;
      pixels[i + 1] = g;
      pixels[i + 2] = b;
    }
  }

  const uint8_t* px(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return &pixels[(static_cast<size_t>(y) * width + x) * 3];
  }
  uint8_t* px(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return &pixels[(static_cast<size_t>(y) * width + x) * 3];
  }

  bool operator==(const RgbImage&) const = default;
};

/// Boolean grid annotating an image of the same dimensions (defect maps,
/// event maps). Stored as 0/1 bytes.
struct MaskImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;  // 0 = clear, 1 = set

  MaskImage() = default;
  MaskImage(int w, int h, bool fill = false)
      : width(w), height(h),
        bits(static_cast<size_t>(w) * static_cast<size_t>(h), fill ? 1 : 0) {
    if (w <= 0 || h <= 0) raise(Errc::kInvalidArgument, "mask dimensions must be positive");
  }

  bool get(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return bits[static_cast<size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0;
  }
  size_t count() const {
    size_t n = 0;
    for (uint8_t b : bits) n += b;
    return n;
  }

  bool operator==(const MaskImage&) const = default;
};

inline void require_same_size(const RawImage& a, const MaskImage& m, const char* who) {
  if (a.width != m.width || a.height != m.height)
    raise(Errc::kDimensionMismatch, std::string(who) + ": mask does not match image");
}

}  // namespace hevs
