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

#include "hevs/restore.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace hevs {

const char* dpc_mode_name(DpcMode m) {
  switch (m) {
    case DpcMode::kNone: return "none";
    case DpcMode::kZeroMask: return "zero";
    case DpcMode::kMedianDeviation: return "median";
    case DpcMode::kBoth: return "both";
  }
  return "?";
}

DpcMode parse_dpc_mode(const std::string& name) {
  if (name == "none") return DpcMode::kNone;
  if (name == "zero") return DpcMode::kZeroMask;
  if (name == "median") return DpcMode::kMedianDeviation;
  if (name == "both") return DpcMode::kBoth;
  raise(Errc::kInvalidArgument, "unknown dpc mode '" + name + "' (want none/zero/median/both)");
}

const char* demosaic_mode_name(DemosaicMode m) {
  return m == DemosaicMode::kBilinear ? "bilinear" : "gradient";
}

DemosaicMode parse_demosaic_mode(const std::string& name) {
  if (name == "bilinear") return DemosaicMode::kBilinear;
  if (name == "gradient") return DemosaicMode::kGradientCorrected;
  raise(Errc::kInvalidArgument,
        "unknown demosaic mode '" + name + "' (want bilinear/gradient)");
}

void validate_config(const RestoreConfig& config) {
  if (config.median_threshold < 1 || config.median_threshold > kRawMax)
    raise(Errc::kInvalidArgument, "median threshold must be in (0, 1023]");
  if (config.radius < 1) raise(Errc::kInvalidArgument, "neighborhood radius must be >= 1");
}

// ---------------------------------------------------------------------------
// Neighborhood machinery shared by DPC and inpainting.

namespace {

// Rounded mean / two-middle median on non-negative integer sums,
// half rounded away from zero.
inline uint16_t round_ratio(uint64_t sum, uint64_t count) {
  return static_cast<uint16_t>((2 * sum + count) / (2 * count));
}

struct Offset {
  int8_t dx;
  int8_t dy;
};

// For each of the 16 tile positions, the in-tile-frame offsets (excluding the
// center) whose target is a non-event pixel of the same underlying color.
// Event exclusion can be baked in because event positions are periodic.
struct NeighborTables {
  std::array<std::vector<Offset>, kTileSize * kTileSize> same_color;
};

NeighborTables build_neighbor_tables(const PatternSpec& spec, int radius) {
  NeighborTables tables;
  for (int ty = 0; ty < kTileSize; ++ty) {
    for (int tx = 0; tx < kTileSize; ++tx) {
      const PixelClass color = spec.underlying_color(tx, ty);
      auto& list = tables.same_color[ty * kTileSize + tx];
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int ny = (((ty + dy) % kTileSize) + kTileSize) % kTileSize;
          const int nx = (((tx + dx) % kTileSize) + kTileSize) % kTileSize;
          if (spec.classify(nx, ny) == PixelClass::kEvent) continue;
          if (spec.underlying_color(nx, ny) != color) continue;
          list.push_back({static_cast<int8_t>(dx), static_cast<int8_t>(dy)});
        }
      }
    }
  }
  return tables;
}

inline int color_index(PixelClass c) {
  switch (c) {
    case PixelClass::kRed: return 0;
    case PixelClass::kGreen: return 1;
    case PixelClass::kBlue: return 2;
    case PixelClass::kEvent: break;
  }
  return -1;
}

// Global per-color means of non-event samples, the fallback when a
// neighborhood turns up empty. `nonzero_only` matches the zero-mask rule.
struct GlobalColorMeans {
  std::array<uint64_t, 3> sum{};
  std::array<uint64_t, 3> count{};

  GlobalColorMeans(const RawImage& raw, const PatternSpec& spec, bool nonzero_only) {
    for (int y = 0; y < raw.height; ++y) {
      for (int x = 0; x < raw.width; ++x) {
        if (spec.is_event(x, y)) continue;
        const uint16_t v = raw.at(x, y);
        if (nonzero_only && v == 0) continue;
        const int c = color_index(spec.underlying_color(x, y));
        sum[c] += v;
        count[c] += 1;
      }
    }
  }

  uint16_t mean_or_zero(PixelClass color) const {
    const int c = color_index(color);
    if (count[c] == 0) return 0;
    return round_ratio(sum[c], count[c]);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// pack / unpack

ChannelStack unpack(const RawImage& raw, const PatternSpec& spec) {
  (void)spec;  // plane order is fixed by tile position, not color
  ChannelStack stack;
  stack.width = raw.width;
  stack.height = raw.height;
  stack.plane_width = (raw.width + kTileSize - 1) / kTileSize;
  stack.plane_height = (raw.height + kTileSize - 1) / kTileSize;
  for (int ty = 0; ty < kTileSize; ++ty) {
    for (int tx = 0; tx < kTileSize; ++tx) {
      auto& plane = stack.planes[ty * kTileSize + tx];
      plane.resize(static_cast<size_t>(stack.plane_width) * stack.plane_height);
      for (int v = 0; v < stack.plane_height; ++v) {
        for (int u = 0; u < stack.plane_width; ++u) {
          const int sy = reflect_index(v * kTileSize + ty, raw.height);
          const int sx = reflect_index(u * kTileSize + tx, raw.width);
          plane[static_cast<size_t>(v) * stack.plane_width + u] = raw.at(sx, sy);
        }
      }
    }
  }
  return stack;
}

RawImage pack(const ChannelStack& stack) {
  RawImage raw(stack.width, stack.height);
  for (int y = 0; y < stack.height; ++y) {
    for (int x = 0; x < stack.width; ++x) {
      const auto& plane = stack.planes[(y % kTileSize) * kTileSize + (x % kTileSize)];
      raw.at(x, y) =
          plane[static_cast<size_t>(y / kTileSize) * stack.plane_width + x / kTileSize];
    }
  }
  return raw;
}

// ---------------------------------------------------------------------------
// DPC and inpainting

RawImage dpc_zero_mask(const RawImage& raw, const MaskImage& events, const PatternSpec& spec,
                       int radius) {
  require_same_size(raw, events, "dpc_zero_mask");
  const NeighborTables tables = build_neighbor_tables(spec, radius);
  std::optional<GlobalColorMeans> global;

  RawImage out = raw;
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      if (raw.at(x, y) != 0 || events.get(x, y)) continue;
      uint64_t sum = 0, count = 0;
      for (const Offset& o : tables.same_color[(y % kTileSize) * kTileSize + (x % kTileSize)]) {
        const int nx = x + o.dx, ny = y + o.dy;
        if (nx < 0 || nx >= raw.width || ny < 0 || ny >= raw.height) continue;
        const uint16_t v = raw.at(nx, ny);
        if (v == 0) continue;
        sum += v;
        count += 1;
      }
      if (count > 0) {
        out.at(x, y) = round_ratio(sum, count);
      } else {
        if (!global) global.emplace(raw, spec, /*nonzero_only=*/true);
        out.at(x, y) = global->mean_or_zero(spec.underlying_color(x, y));
      }
    }
  }
  return out;
}

namespace {

// Median of the first n entries; insertion sort wins over nth_element for
// the ~20-sample windows this stage sees.
inline uint16_t sorted_median(uint16_t* vals, size_t n) {
  for (size_t i = 1; i < n; ++i) {
    const uint16_t v = vals[i];
    size_t j = i;
    while (j > 0 && vals[j - 1] > v) {
      vals[j] = vals[j - 1];
      --j;
    }
    vals[j] = v;
  }
  if (n % 2 == 1) return vals[n / 2];
  return round_ratio(static_cast<uint64_t>(vals[n / 2 - 1]) + vals[n / 2], 2);
}

}  // namespace

std::pair<RawImage, MaskImage> dpc_median_deviation(const RawImage& raw, const MaskImage& events,
                                                    const PatternSpec& spec, int threshold,
                                                    int radius) {
  require_same_size(raw, events, "dpc_median_deviation");
  if (threshold < 1 || threshold > kRawMax)
    raise(Errc::kInvalidArgument, "median threshold must be in (0, 1023]");
  const NeighborTables tables = build_neighbor_tables(spec, radius);

  RawImage out = raw;
  MaskImage flags(raw.width, raw.height);
  std::vector<uint16_t> window(static_cast<size_t>(2 * radius + 1) * (2 * radius + 1));

  const bool has_interior = raw.width > 2 * radius && raw.height > 2 * radius;
  for (int y = 0; y < raw.height; ++y) {
    const bool y_interior = has_interior && y >= radius && y < raw.height - radius;
    for (int x = 0; x < raw.width; ++x) {
      if (events.get(x, y)) continue;
      const auto& offsets =
          tables.same_color[(y % kTileSize) * kTileSize + (x % kTileSize)];
      size_t n = 0;
      if (y_interior && x >= radius && x < raw.width - radius) {
        for (const Offset& o : offsets) window[n++] = raw.at(x + o.dx, y + o.dy);
      } else {
        for (const Offset& o : offsets) {
          const int nx = x + o.dx, ny = y + o.dy;
          if (nx < 0 || nx >= raw.width || ny < 0 || ny >= raw.height) continue;
          window[n++] = raw.at(nx, ny);
        }
      }
      if (n == 0) continue;  // sub-tile frame with radius < 4; nothing to compare against
      const uint16_t median = sorted_median(window.data(), n);
      if (std::abs(static_cast<int>(raw.at(x, y)) - static_cast<int>(median)) > threshold) {
        out.at(x, y) = median;
        flags.set(x, y, true);
      }
    }
  }
  return {std::move(out), std::move(flags)};
}

RawImage inpaint_events(const RawImage& raw, const MaskImage& events, const PatternSpec& spec,
                        int radius) {
  require_same_size(raw, events, "inpaint_events");
  const NeighborTables tables = build_neighbor_tables(spec, radius);
  std::optional<GlobalColorMeans> global;

  RawImage out = raw;
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      if (!events.get(x, y)) continue;
      uint64_t sum = 0, count = 0;
      for (const Offset& o : tables.same_color[(y % kTileSize) * kTileSize + (x % kTileSize)]) {
        const int nx = x + o.dx, ny = y + o.dy;
        if (nx < 0 || nx >= raw.width || ny < 0 || ny >= raw.height) continue;
        sum += raw.at(nx, ny);
        count += 1;
      }
      if (count > 0) {
        out.at(x, y) = round_ratio(sum, count);
      } else {
        if (!global) global.emplace(raw, spec, /*nonzero_only=*/false);
        out.at(x, y) = global->mean_or_zero(spec.underlying_color(x, y));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Remosaic

namespace {

inline PixelClass bayer_color(int x, int y) {
  const bool ex = (x % 2) == 0, ey = (y % 2) == 0;
  if (ex && ey) return PixelClass::kRed;
  if (!ex && !ey) return PixelClass::kBlue;
  return PixelClass::kGreen;
}

// Folds an over-range source index back by one whole tile so the replacement
// sample keeps the same tile phase (and therefore the same underlying color).
// Only frames narrower than one tile fall back to plain reflection.
inline int fold_to_phase(int i, int n) {
  if (i < n) return i;
  const int stepped = i - kTileSize;
  return stepped >= 0 ? stepped : reflect_index(i, n);
}

}  // namespace

RemosaicPermutation remosaic_permutation(const PatternSpec& spec) {
  RemosaicPermutation perm{};
  // Solve one assignment problem per color class: destinations (Bayer
  // positions of that color, row-major) to sources (tile positions carrying
  // it). Class sizes are 4/8/4, so exhaustive enumeration is cheap and the
  // first minimal permutation found is the lexicographically smallest.
  for (PixelClass color : {PixelClass::kRed, PixelClass::kGreen, PixelClass::kBlue}) {
    std::vector<int> sources, dests;
    for (int i = 0; i < kTileSize * kTileSize; ++i) {
      const int y = i / kTileSize, x = i % kTileSize;
      if (spec.underlying_color(x, y) == color) sources.push_back(i);
      if (bayer_color(x, y) == color) dests.push_back(i);
    }
    std::vector<int> order(sources.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> best;
    int best_cost = std::numeric_limits<int>::max();
    do {
      int cost = 0;
      for (size_t k = 0; k < order.size(); ++k) {
        const int s = sources[order[k]], d = dests[k];
        cost += std::abs(s / kTileSize - d / kTileSize) + std::abs(s % kTileSize - d % kTileSize);
        if (cost >= best_cost) break;
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = order;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    for (size_t k = 0; k < best.size(); ++k)
      perm.src_of[dests[k]] = static_cast<uint8_t>(sources[best[k]]);
  }
  return perm;
}

RawImage remosaic_quad_to_bayer(const RawImage& raw, const PatternSpec& spec) {
  const RemosaicPermutation perm = remosaic_permutation(spec);
  RawImage out(raw.width, raw.height);
  for (int y = 0; y < raw.height; ++y) {
    const int ty = y % kTileSize;
    const int base_y = y - ty;
    for (int x = 0; x < raw.width; ++x) {
      const int tx = x % kTileSize;
      const int src = perm.src_of[ty * kTileSize + tx];
      const int sy = fold_to_phase(base_y + src / kTileSize, raw.height);
      const int sx = fold_to_phase(x - tx + src % kTileSize, raw.width);
      out.at(x, y) = raw.at(sx, sy);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Demosaic

namespace {

// Frame padded by 2 on each side with reflect-101 so the 5x5 kernels never
// branch. Taps and divisors are exact in double for 10-bit integer input.
struct PaddedPlane {
  int width, height;  // original size
  int stride;
  std::vector<double> data;

  explicit PaddedPlane(const RawImage& raw)
      : width(raw.width), height(raw.height), stride(raw.width + 4),
        data(static_cast<size_t>(raw.width + 4) * (raw.height + 4)) {
    for (int y = -2; y < height + 2; ++y) {
      const int sy = reflect_index(y, height);
      for (int x = -2; x < width + 2; ++x)
        data[static_cast<size_t>(y + 2) * stride + (x + 2)] =
            raw.at(reflect_index(x, width), sy);
    }
  }

  double at(int x, int y) const {
    return data[static_cast<size_t>(y + 2) * stride + (x + 2)];
  }
};

struct Interpolators {
  const PaddedPlane& p;

  double cross4(int x, int y) const {
    return (p.at(x, y - 1) + p.at(x, y + 1) + p.at(x - 1, y) + p.at(x + 1, y)) / 4.0;
  }
  double horiz2(int x, int y) const { return (p.at(x - 1, y) + p.at(x + 1, y)) / 2.0; }
  double vert2(int x, int y) const { return (p.at(x, y - 1) + p.at(x, y + 1)) / 2.0; }
  double diag4(int x, int y) const {
    return (p.at(x - 1, y - 1) + p.at(x + 1, y - 1) + p.at(x - 1, y + 1) + p.at(x + 1, y + 1)) /
           4.0;
  }

  // 5x5 gradient-corrected kernels, all with unit DC gain.
  double g_at_rb(int x, int y) const {
    const double cross = p.at(x, y - 1) + p.at(x, y + 1) + p.at(x - 1, y) + p.at(x + 1, y);
    const double axial2 = p.at(x, y - 2) + p.at(x, y + 2) + p.at(x - 2, y) + p.at(x + 2, y);
    return (4.0 * p.at(x, y) + 2.0 * cross - axial2) / 8.0;
  }
  // Chroma at a green pixel whose same-row neighbors carry it.
  double rb_at_g_row(int x, int y) const {
    const double diag = p.at(x - 1, y - 1) + p.at(x + 1, y - 1) + p.at(x - 1, y + 1) +
                        p.at(x + 1, y + 1);
    return (5.0 * p.at(x, y) + 4.0 * (p.at(x - 1, y) + p.at(x + 1, y)) - diag -
            (p.at(x - 2, y) + p.at(x + 2, y)) + 0.5 * (p.at(x, y - 2) + p.at(x, y + 2))) /
           8.0;
  }
  // Chroma at a green pixel whose same-column neighbors carry it.
  double rb_at_g_col(int x, int y) const {
    const double diag = p.at(x - 1, y - 1) + p.at(x + 1, y - 1) + p.at(x - 1, y + 1) +
                        p.at(x + 1, y + 1);
    return (5.0 * p.at(x, y) + 4.0 * (p.at(x, y - 1) + p.at(x, y + 1)) - diag -
            (p.at(x, y - 2) + p.at(x, y + 2)) + 0.5 * (p.at(x - 2, y) + p.at(x + 2, y))) /
           8.0;
  }
  // Chroma at the opposite chroma pixel (R at B, B at R).
  double rb_at_br(int x, int y) const {
    const double diag = p.at(x - 1, y - 1) + p.at(x + 1, y - 1) + p.at(x - 1, y + 1) +
                        p.at(x + 1, y + 1);
    const double axial2 = p.at(x, y - 2) + p.at(x, y + 2) + p.at(x - 2, y) + p.at(x + 2, y);
    return (6.0 * p.at(x, y) + 2.0 * diag - 1.5 * axial2) / 8.0;
  }
};

}  // namespace

RgbPlanes demosaic_planes(const RawImage& raw, DemosaicMode mode) {
  const PaddedPlane padded(raw);
  const Interpolators in{padded};
  const size_t n = static_cast<size_t>(raw.width) * raw.height;
  RgbPlanes out;
  out.width = raw.width;
  out.height = raw.height;
  out.r.resize(n);
  out.g.resize(n);
  out.b.resize(n);

  const bool gradient = mode == DemosaicMode::kGradientCorrected;
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      const size_t i = static_cast<size_t>(y) * raw.width + x;
      const double v = padded.at(x, y);
      const bool even_x = (x % 2) == 0, even_y = (y % 2) == 0;
      if (even_x && even_y) {  // red pixel
        out.r[i] = v;
        out.g[i] = gradient ? in.g_at_rb(x, y) : in.cross4(x, y);
        out.b[i] = gradient ? in.rb_at_br(x, y) : in.diag4(x, y);
      } else if (!even_x && !even_y) {  // blue pixel
        out.b[i] = v;
        out.g[i] = gradient ? in.g_at_rb(x, y) : in.cross4(x, y);
        out.r[i] = gradient ? in.rb_at_br(x, y) : in.diag4(x, y);
      } else if (!even_x) {  // green, red row: R left/right, B above/below
        out.g[i] = v;
        out.r[i] = gradient ? in.rb_at_g_row(x, y) : in.horiz2(x, y);
        out.b[i] = gradient ? in.rb_at_g_col(x, y) : in.vert2(x, y);
      } else {  // green, blue row: B left/right, R above/below
        out.g[i] = v;
        out.r[i] = gradient ? in.rb_at_g_col(x, y) : in.vert2(x, y);
        out.b[i] = gradient ? in.rb_at_g_row(x, y) : in.horiz2(x, y);
      }
    }
  }
  return out;
}

RgbImage demosaic_bayer(const RawImage& raw, DemosaicMode mode) {
  const RgbPlanes planes = demosaic_planes(raw, mode);
  RgbImage out(raw.width, raw.height);
  for (size_t i = 0; i < planes.r.size(); ++i) {
    out.pixels[3 * i] = sample_10to8(planes.r[i]);
    out.pixels[3 * i + 1] = sample_10to8(planes.g[i]);
    out.pixels[3 * i + 2] = sample_10to8(planes.b[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

RgbImage restore(const RawImage& raw, const RestoreConfig& config) {
  validate_config(config);
  const MaskImage events = event_mask(config.spec, raw.width, raw.height);

  RawImage frame = raw;
  if (config.dpc == DpcMode::kZeroMask || config.dpc == DpcMode::kBoth)
    frame = dpc_zero_mask(frame, events, config.spec, config.radius);
  if (config.dpc == DpcMode::kMedianDeviation || config.dpc == DpcMode::kBoth)
    frame = dpc_median_deviation(frame, events, config.spec, config.median_threshold,
                                 config.radius)
                .first;
  frame = inpaint_events(frame, events, config.spec, config.radius);
  frame = remosaic_quad_to_bayer(frame, config.spec);
  return demosaic_bayer(frame, config.demosaic);
}

}  // namespace hevs
