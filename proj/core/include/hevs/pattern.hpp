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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hevs/image.hpp"

namespace hevs {

inline constexpr int kTileSize = 4;
inline constexpr int kEventsPerTile = 2;

enum class PixelClass : uint8_t { kRed, kGreen, kBlue, kEvent };

inline char pixel_class_code(PixelClass c) {
  switch (c) {
    case PixelClass::kRed: return 'R';
    case PixelClass::kGreen: return 'G';
    case PixelClass::kBlue: return 'B';
    case PixelClass::kEvent: return 'E';
  }
  return '?';
}

/// Sensor geometry: a 4x4 tile of pixel classes repeating with period 4 in
/// both axes. Color entries follow the quad arrangement (four 2x2 cells of
/// one color each, cell colors {R, G, G, B}); two entries per tile are event
/// pixels occluding the color their cell would carry.
///
/// Immutable after construction; all queries are pure.
class PatternSpec {
 public:
  /// Builds from a 4x4 class grid. Throws InvalidPattern if the grid violates
  /// the tile invariants (see validate()).
  explicit PatternSpec(const std::array<std::array<PixelClass, kTileSize>, kTileSize>& tile);

  /// Pixel class at absolute sensor coordinates (period-4 tiling).
  PixelClass classify(int x, int y) const {
    return tile_[y % kTileSize][x % kTileSize];
  }

  /// Color carried by the pixel's 2x2 cell. For non-event positions this is
  /// classify(); for event positions it is the occluded cell color.
  PixelClass underlying_color(int x, int y) const {
    return cell_color_[(y % kTileSize) / 2][(x % kTileSize) / 2];
  }

  bool is_event(int x, int y) const { return classify(x, y) == PixelClass::kEvent; }

  /// The two (row, col) event positions within the tile.
  const std::array<std::pair<int, int>, kEventsPerTile>& event_positions() const {
    return event_positions_;
  }

  const std::array<std::array<PixelClass, kTileSize>, kTileSize>& tile() const { return tile_; }

  /// Canonical text form: four lines of four R/G/B/E codes.
  std::string to_string() const;

  bool operator==(const PatternSpec&) const = default;

 private:
  std::array<std::array<PixelClass, kTileSize>, kTileSize> tile_;
  std::array<std::array<PixelClass, 2>, 2> cell_color_;  // per 2x2 cell
  std::array<std::pair<int, int>, kEventsPerTile> event_positions_;
};

/// Shipped default: quad RGGB orientation (rows 0-1 RRGG, rows 2-3 GGBB)
/// with event pixels at tile positions (1,1) and (2,2).
const PatternSpec& default_pattern();

/// Parses the 4-line R/G/B/E grid format. Rejects malformed text and any
/// grid failing the PatternSpec invariants.
PatternSpec parse_pattern(const std::string& text);
PatternSpec load_pattern(const std::filesystem::path& file);

/// mask[y][x] = (classify(x, y) == Event).
MaskImage event_mask(const PatternSpec& spec, int width, int height);

}  // namespace hevs
