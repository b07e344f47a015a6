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

#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "hevs/pattern.hpp"
#include "hevs/raw_io.hpp"

namespace hevs {

enum class DpcMode : uint8_t { kNone, kZeroMask, kMedianDeviation, kBoth };
enum class DemosaicMode : uint8_t { kBilinear, kGradientCorrected };

const char* dpc_mode_name(DpcMode m);
DpcMode parse_dpc_mode(const std::string& name);
const char* demosaic_mode_name(DemosaicMode m);
DemosaicMode parse_demosaic_mode(const std::string& name);

/// Full reconstruction configuration. The neighborhood radius (Chebyshev) is
/// shared by defect correction and event inpainting; radius >= 4 guarantees a
/// same-color neighbor exists under the period-4 tile.
struct RestoreConfig {
  PatternSpec spec = default_pattern();
  DpcMode dpc = DpcMode::kBoth;
  int median_threshold = 64;  // 10-bit units, in (0, 1023]
  DemosaicMode demosaic = DemosaicMode::kGradientCorrected;
  int radius = 4;
};

/// Throws InvalidArgument on out-of-range threshold or radius.
void validate_config(const RestoreConfig& config);

/// Mirror fold (reflect-101) of an index into [0, n). Preserves 2-periodic
/// CFA phase, so demosaic borders see a consistent mosaic.
inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i = std::abs(i) % period;
  return i < n ? i : period - i;
}

// ---------------------------------------------------------------------------
// 16-plane decomposition: one quarter-resolution plane per 4x4 tile position.
// pack(unpack(x)) == x exactly; frames not divisible by 4 are reflect-padded
// on unpack and cropped back on pack.

struct ChannelStack {
  int width = 0;   // original frame size
  int height = 0;
  int plane_width = 0;
  int plane_height = 0;
  std::array<std::vector<uint16_t>, kTileSize * kTileSize> planes;  // [tile_row*4 + tile_col]
};

ChannelStack unpack(const RawImage& raw, const PatternSpec& spec);
RawImage pack(const ChannelStack& stack);

// ---------------------------------------------------------------------------
// Defect pixel correction

/// Replaces zero-valued non-event samples by the rounded mean of in-bounds
/// same-underlying-color, non-zero, non-event neighbors within `radius`.
/// A pixel with no such neighbor falls back to the global same-color mean
/// (0 when that set is empty too). Everything else passes through.
RawImage dpc_zero_mask(const RawImage& raw, const MaskImage& events, const PatternSpec& spec,
                       int radius = 4);

/// Flags a non-event sample as defective iff it deviates from the median of
/// its same-color non-event neighbors by more than `threshold`, and replaces
/// it with that median. Detection runs on the input frame, so the result is
/// independent of scan order. Returns the corrected frame and the flag mask.
std::pair<RawImage, MaskImage> dpc_median_deviation(const RawImage& raw, const MaskImage& events,
                                                    const PatternSpec& spec, int threshold,
                                                    int radius = 4);

/// Fills every event position with the rounded mean of in-bounds
/// same-underlying-color non-event samples within `radius`.
RawImage inpaint_events(const RawImage& raw, const MaskImage& events, const PatternSpec& spec,
                        int radius = 4);

// ---------------------------------------------------------------------------
// Quad -> Bayer remosaic

/// Per-tile pixel rearrangement: src_of[dst_row*4 + dst_col] is the tile
/// index the destination takes its sample from. Valid (each destination
/// receives its Bayer color) and minimal in total Manhattan displacement,
/// ties broken lexicographically, so the table is a pure function of the
/// tile layout.
struct RemosaicPermutation {
  std::array<uint8_t, kTileSize * kTileSize> src_of;

  bool operator==(const RemosaicPermutation&) const = default;
};

RemosaicPermutation remosaic_permutation(const PatternSpec& spec);

/// Rearranges each 4x4 tile into standard RGGB Bayer. Expects event pixels to
/// be inpainted already. The per-tile sample multiset is preserved exactly;
/// partial boundary tiles pull out-of-range sources from the previous tile,
/// which keeps the underlying color intact.
RawImage remosaic_quad_to_bayer(const RawImage& raw, const PatternSpec& spec);

// ---------------------------------------------------------------------------
// Bayer demosaic

/// Interpolated channel planes in the 10-bit domain, unclamped (gradient
/// correction may overshoot). Index y*width + x.
struct RgbPlanes {
  int width = 0;
  int height = 0;
  std::vector<double> r, g, b;
};

/// Expects standard RGGB Bayer input; borders use reflect-101 padding.
RgbPlanes demosaic_planes(const RawImage& raw, DemosaicMode mode);

/// demosaic_planes scaled 10->8 bit and clamped to [0, 255].
RgbImage demosaic_bayer(const RawImage& raw, DemosaicMode mode);

// ---------------------------------------------------------------------------

/// The full reconstruction map: defect correction -> event inpainting ->
/// remosaic -> demosaic. Output resolution equals input resolution.
RgbImage restore(const RawImage& raw, const RestoreConfig& config);

}  // namespace hevs
