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

#include "hevs/simulate.hpp"

#include <algorithm>

#include "hevs/rng.hpp"

namespace hevs {

const char* defect_mode_name(DefectMode m) {
  switch (m) {
    case DefectMode::kStuckLow: return "stuck-low";
    case DefectMode::kStuckHigh: return "stuck-high";
    case DefectMode::kUniform: return "uniform";
  }
  return "?";
}

DefectMode parse_defect_mode(const std::string& name) {
  if (name == "stuck-low") return DefectMode::kStuckLow;
  if (name == "stuck-high") return DefectMode::kStuckHigh;
  if (name == "uniform") return DefectMode::kUniform;
  raise(Errc::kInvalidArgument,
        "unknown defect mode '" + name + "' (want stuck-low, stuck-high or uniform)");
}

RawImage mosaic(const RgbImage& rgb, const PatternSpec& spec) {
  RawImage raw(rgb.width, rgb.height);
  for (int y = 0; y < rgb.height; ++y) {
    for (int x = 0; x < rgb.width; ++x) {
      if (spec.is_event(x, y)) continue;  // stays 0
      const uint8_t* p = rgb.px(x, y);
      uint8_t v = 0;
      switch (spec.underlying_color(x, y)) {
        case PixelClass::kRed: v = p[0]; break;
        case PixelClass::kGreen: v = p[1]; break;
        case PixelClass::kBlue: v = p[2]; break;
        case PixelClass::kEvent: break;  // unreachable
      }
      raw.at(x, y) = sample_8to10(v);
    }
  }
  return raw;
}

std::pair<RawImage, MaskImage> inject_defects(const RawImage& raw, const MaskImage& events,
                                              const DefectModel& model) {
  require_same_size(raw, events, "inject_defects");
  if (model.density < 0.0 || model.density > 1.0)
    raise(Errc::kInvalidArgument, "defect density must be in [0, 1]");

  std::vector<uint32_t> candidates;
  candidates.reserve(raw.samples.size());
  for (uint32_t i = 0; i < raw.samples.size(); ++i)
    if (!events.bits[i]) candidates.push_back(i);

  const size_t count =
      static_cast<size_t>(round_half_away(model.density * static_cast<double>(candidates.size())));

  RawImage out = raw;
  MaskImage mask(raw.width, raw.height);
  Rng rng(model.seed);
  for (size_t k = 0; k < count; ++k) {
    const size_t j = k + static_cast<size_t>(rng.bounded(candidates.size() - k));
    std::swap(candidates[k], candidates[j]);
    const uint32_t pos = candidates[k];
    switch (model.mode) {
      case DefectMode::kStuckLow: out.samples[pos] = 0; break;
      case DefectMode::kStuckHigh: out.samples[pos] = kRawMax; break;
      case DefectMode::kUniform:
        out.samples[pos] = static_cast<uint16_t>(rng.bounded(kRawMax + 1));
        break;
    }
    mask.bits[pos] = 1;
  }
  return {std::move(out), std::move(mask)};
}

RgbImage rotate90_cw(const RgbImage& img, int quarter_turns) {
  quarter_turns = ((quarter_turns % 4) + 4) % 4;
  if (quarter_turns == 0) return img;
  RgbImage out = (quarter_turns % 2 == 0) ? RgbImage(img.width, img.height)
                                          : RgbImage(img.height, img.width);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      int nx = 0, ny = 0;
      switch (quarter_turns) {
        case 1: nx = img.height - 1 - y; ny = x; break;
        case 2: nx = img.width - 1 - x; ny = img.height - 1 - y; break;
        case 3: nx = y; ny = img.width - 1 - x; break;
      }
      const uint8_t* s = img.px(x, y);
      uint8_t* d = out.px(nx, ny);
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
    }
  }
  return out;
}

RgbImage flip_horizontal(const RgbImage& img) {
  RgbImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const uint8_t* s = img.px(x, y);
      uint8_t* d = out.px(img.width - 1 - x, y);
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
    }
  }
  return out;
}

SimulatedPair augment(const RgbImage& label, const PatternSpec& spec, const DefectModel& model,
                      uint64_t seed) {
  Rng rng(seed);
  const int turns = static_cast<int>(rng.bounded(4));
  const bool flip = rng.bounded(2) == 1;

  RgbImage transformed = rotate90_cw(label, turns);
  if (flip) transformed = flip_horizontal(transformed);

  SimulatedPair pair;
  pair.events = event_mask(spec, transformed.width, transformed.height);
  auto [input, defects] = inject_defects(mosaic(transformed, spec), pair.events, model);
  pair.input = std::move(input);
  pair.defects = std::move(defects);
  pair.label = std::move(transformed);
  return pair;
}

Manifest generate_dataset(const std::filesystem::path& labels_dir,
                          const std::filesystem::path& out_dir, const PatternSpec& spec,
                          const DefectModel& model, uint64_t seed) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(labels_dir))
    raise(Errc::kIoError, "labels directory not found: " + labels_dir.string());

  std::vector<fs::path> label_files;
  for (const auto& entry : fs::directory_iterator(labels_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      label_files.push_back(entry.path());
  std::sort(label_files.begin(), label_files.end());

  fs::create_directories(out_dir / "input");
  fs::create_directories(out_dir / "labels");
  fs::create_directories(out_dir / "masks");

  Manifest manifest;
  manifest.pattern = spec.to_string();
  manifest.seed = seed;
  manifest.density = model.density;
  manifest.defect_mode = defect_mode_name(model.mode);

  for (size_t index = 0; index < label_files.size(); ++index) {
    const fs::path& file = label_files[index];
    const std::string stem = file.stem().string();
    try {
      RgbImage label = read_rgb_file(file);
      DefectModel per_image = model;
      per_image.seed = model.seed ^ static_cast<uint64_t>(index);
      SimulatedPair pair = augment(label, spec, per_image, seed ^ static_cast<uint64_t>(index));

      SceneEntry scene;
      scene.name = stem;
      scene.raw = "input/" + stem + ".bin";
      scene.label = "labels/" + stem + ".png";
      scene.defects = "masks/" + stem + "_defects.png";
      scene.events = "masks/" + stem + "_events.png";
      scene.width = pair.input.width;
      scene.height = pair.input.height;

      write_raw_file(pair.input, out_dir / scene.raw);
      write_rgb_file(pair.label, out_dir / scene.label);
      write_mask_file(pair.defects, out_dir / scene.defects);
      write_mask_file(pair.events, out_dir / scene.events);
      manifest.scenes.push_back(std::move(scene));
    } catch (const Error& e) {
      raise(e.code(), file.string() + ": " + e.what());
    }
  }

  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace hevs
