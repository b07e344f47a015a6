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

#include "hevs/pattern.hpp"

#include <fstream>
#include <sstream>

namespace hevs {

namespace {

// Validates the tile and derives the per-cell colors. The tile must contain
// exactly two events, every 2x2 cell must carry a single color behind its
// non-event entries, and the four cell colors must be {R, G, G, B}.
std::array<std::array<PixelClass, 2>, 2> derive_cell_colors(
    const std::array<std::array<PixelClass, kTileSize>, kTileSize>& tile) {
  int events = 0;
  for (const auto& row : tile)
    for (PixelClass c : row)
      if (c == PixelClass::kEvent) ++events;
  if (events != kEventsPerTile)
    raise(Errc::kInvalidPattern,
          "tile must contain exactly 2 event entries, found " + std::to_string(events));

  std::array<std::array<PixelClass, 2>, 2> cell_color{};
  int reds = 0, greens = 0, blues = 0;
  for (int cy = 0; cy < 2; ++cy) {
    for (int cx = 0; cx < 2; ++cx) {
      bool found = false;
      PixelClass color = PixelClass::kGreen;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          PixelClass c = tile[cy * 2 + dy][cx * 2 + dx];
          if (c == PixelClass::kEvent) continue;
          if (!found) {
            color = c;
            found = true;
          } else if (c != color) {
            raise(Errc::kInvalidPattern, "2x2 cell mixes colors");
          }
        }
      }
      if (!found) raise(Errc::kInvalidPattern, "2x2 cell has no color entry");
      cell_color[cy][cx] = color;
      switch (color) {
        case PixelClass::kRed: ++reds; break;
        case PixelClass::kGreen: ++greens; break;
        case PixelClass::kBlue: ++blues; break;
        case PixelClass::kEvent: break;
      }
    }
  }
  if (reds != 1 || greens != 2 || blues != 1)
    raise(Errc::kInvalidPattern, "cell colors must be one R, two G, one B");
  return cell_color;
}

}  // namespace

PatternSpec::PatternSpec(const std::array<std::array<PixelClass, kTileSize>, kTileSize>& tile)
    : tile_(tile), cell_color_(derive_cell_colors(tile)) {
  int idx = 0;
  for (int y = 0; y < kTileSize; ++y)
    for (int x = 0; x < kTileSize; ++x)
      if (tile_[y][x] == PixelClass::kEvent) event_positions_[idx++] = {y, x};
}

std::string PatternSpec::to_string() const {
  std::string out;
  out.reserve(kTileSize * (kTileSize + 1));
  for (int y = 0; y < kTileSize; ++y) {
    for (int x = 0; x < kTileSize; ++x) out.push_back(pixel_class_code(tile_[y][x]));
    out.push_back('\n');
  }
  return out;
}

const PatternSpec& default_pattern() {
  static const PatternSpec spec = parse_pattern(
      "RRGG\n"
      "REGG\n"
      "GGEB\n"
      "GGBB\n");
  return spec;
}

PatternSpec parse_pattern(const std::string& text) {
  std::array<std::array<PixelClass, kTileSize>, kTileSize> tile{};
  std::istringstream in(text);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= kTileSize) raise(Errc::kInvalidPattern, "expected exactly 4 lines");
    if (line.size() != kTileSize)
      raise(Errc::kInvalidPattern, "line " + std::to_string(row + 1) + " must have 4 codes");
    for (int col = 0; col < kTileSize; ++col) {
      switch (line[col]) {
        case 'R': tile[row][col] = PixelClass::kRed; break;
        case 'G': tile[row][col] = PixelClass::kGreen; break;
        case 'B': tile[row][col] = PixelClass::kBlue; break;
        case 'E': tile[row][col] = PixelClass::kEvent; break;
        default:
          raise(Errc::kInvalidPattern,
                std::string("unknown code '") + line[col] + "' (want R/G/B/E)");
      }
    }
    ++row;
  }
  if (row != kTileSize) raise(Errc::kInvalidPattern, "expected exactly 4 lines");
  return PatternSpec(tile);
}

PatternSpec load_pattern(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) raise(Errc::kIoError, "cannot open pattern file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pattern(buf.str());
}

MaskImage event_mask(const PatternSpec& spec, int width, int height) {
  MaskImage mask(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (spec.is_event(x, y)) mask.set(x, y, true);
  return mask;
}

}  // namespace hevs
