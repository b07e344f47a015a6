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

#include "hevs/raw_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace hevs {

namespace {
using json = nlohmann::json;
}

// ---------------------------------------------------------------------------
// .bin

RawImage read_raw(std::span<const uint8_t> bytes, int width, int height) {
  if (width <= 0 || height <= 0) raise(Errc::kInvalidArgument, "dimensions must be positive");
  const size_t expected = static_cast<size_t>(width) * height * 2;
  if (bytes.size() != expected)
    raise(Errc::kLengthMismatch, "stream holds " + std::to_string(bytes.size()) +
                                     " bytes, expected " + std::to_string(expected));
  RawImage img(width, height);
  for (size_t i = 0; i < img.samples.size(); ++i) {
    const uint16_t word = static_cast<uint16_t>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    if (word > kRawMax)
      raise(Errc::kRangeError, "sample " + std::to_string(i) + " is " + std::to_string(word) +
                                   ", exceeds 10-bit range");
    img.samples[i] = word;
  }
  return img;
}

RawImage read_raw_file(const std::filesystem::path& file, int width, int height) {
  const auto bytes = read_file_bytes(file);
  return read_raw(bytes, width, height);
}

std::vector<uint8_t> write_raw(const RawImage& img) {
  std::vector<uint8_t> bytes(img.samples.size() * 2);
  for (size_t i = 0; i < img.samples.size(); ++i) {
    bytes[2 * i] = static_cast<uint8_t>(img.samples[i] & 0xFF);
    bytes[2 * i + 1] = static_cast<uint8_t>(img.samples[i] >> 8);
  }
  return bytes;
}

void write_raw_file(const RawImage& img, const std::filesystem::path& file) {
  const auto bytes = write_raw(img);
  write_file_bytes(bytes, file);
}

// ---------------------------------------------------------------------------
// PNG (libpng)

namespace {

struct PngMemoryReader {
  std::span<const uint8_t> data;
  size_t pos = 0;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* r = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
  if (r->pos + len > r->data.size()) {
    png_error(png, "read past end of stream");
    return;
  }
  std::memcpy(out, r->data.data() + r->pos, len);
  r->pos += len;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_mem_flush(png_structp) {}

// Decodes to 8-bit rows with `channels` output channels (3 = RGB, 1 = gray).
// Shared by the RGB and mask readers.
struct DecodedPng {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rows;
};

DecodedPng decode_png(std::span<const uint8_t> bytes, int channels) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
    raise(Errc::kDecodeError, "not a PNG stream");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) raise(Errc::kDecodeError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    raise(Errc::kDecodeError, "libpng init failed");
  }

  DecodedPng out;
  std::vector<png_bytep> row_ptrs;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::kDecodeError, "libpng failed to decode stream");
  }

  PngMemoryReader reader{bytes, 0};
  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);

  const int bit_depth = png_get_bit_depth(png, info);
  if (bit_depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::kUnsupportedBitDepth, "16-bit PNG input is not supported");
  }

  const int color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (channels == 3) {
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
      png_set_gray_to_rgb(png);
  } else {
    if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_GRAY_ALPHA)
      png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  const size_t stride = png_get_rowbytes(png, info);
  if (stride != static_cast<size_t>(out.width) * channels) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::kDecodeError, "unexpected decoded row stride");
  }

  out.rows.resize(stride * out.height);
  row_ptrs.resize(out.height);
  for (int y = 0; y < out.height; ++y) row_ptrs[y] = out.rows.data() + y * stride;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

std::vector<uint8_t> encode_png(const uint8_t* data, int width, int height, int channels) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) raise(Errc::kIoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    raise(Errc::kIoError, "libpng init failed");
  }

  std::vector<uint8_t> out;
  std::vector<png_bytep> row_ptrs(height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    raise(Errc::kIoError, "libpng failed to encode");
  }

  png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
  // Settings pinned so a rerun emits identical bytes.
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, width, height, 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const size_t stride = static_cast<size_t>(width) * channels;
  for (int y = 0; y < height; ++y)
    row_ptrs[y] = const_cast<png_bytep>(data + y * stride);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

RgbImage read_rgb(std::span<const uint8_t> png_bytes) {
  DecodedPng d = decode_png(png_bytes, 3);
  RgbImage img(d.width, d.height);
  img.pixels = std::move(d.rows);
  return img;
}

RgbImage read_rgb_file(const std::filesystem::path& file) {
  return read_rgb(read_file_bytes(file));
}

std::vector<uint8_t> write_rgb(const RgbImage& img) {
  return encode_png(img.pixels.data(), img.width, img.height, 3);
}

void write_rgb_file(const RgbImage& img, const std::filesystem::path& file) {
  write_file_bytes(write_rgb(img), file);
}

MaskImage read_mask(std::span<const uint8_t> png_bytes) {
  DecodedPng d = decode_png(png_bytes, 1);
  MaskImage mask(d.width, d.height);
  for (size_t i = 0; i < d.rows.size(); ++i) mask.bits[i] = d.rows[i] ? 1 : 0;
  return mask;
}

MaskImage read_mask_file(const std::filesystem::path& file) {
  return read_mask(read_file_bytes(file));
}

std::vector<uint8_t> write_mask(const MaskImage& mask) {
  std::vector<uint8_t> gray(mask.bits.size());
  for (size_t i = 0; i < gray.size(); ++i) gray[i] = mask.bits[i] ? 255 : 0;
  return encode_png(gray.data(), mask.width, mask.height, 1);
}

void write_mask_file(const MaskImage& mask, const std::filesystem::path& file) {
  write_file_bytes(write_mask(mask), file);
}

// ---------------------------------------------------------------------------
// Manifest

std::string manifest_to_json(const Manifest& m) {
  json scenes = json::array();
  for (const SceneEntry& s : m.scenes) {
    scenes.push_back({{"name", s.name},
                      {"raw", s.raw},
                      {"label", s.label},
                      {"defects", s.defects},
                      {"events", s.events},
                      {"width", s.width},
                      {"height", s.height}});
  }
  json j = {{"pattern", m.pattern},
            {"seed", m.seed},
            {"density", m.density},
            {"defect_mode", m.defect_mode},
            {"scenes", scenes}};
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::kDecodeError, std::string("manifest is not valid JSON: ") + e.what());
  }
  Manifest m;
  try {
    m.pattern = j.value("pattern", std::string());
    m.seed = j.value("seed", uint64_t{0});
    m.density = j.value("density", 0.0);
    m.defect_mode = j.value("defect_mode", std::string());
    for (const json& s : j.at("scenes")) {
      SceneEntry e;
      e.name = s.at("name").get<std::string>();
      e.raw = s.at("raw").get<std::string>();
      e.label = s.value("label", std::string());
      e.defects = s.value("defects", std::string());
      e.events = s.value("events", std::string());
      e.width = s.at("width").get<int>();
      e.height = s.at("height").get<int>();
      if (e.width <= 0 || e.height <= 0)
        raise(Errc::kInvalidArgument, "scene '" + e.name + "' has non-positive dimensions");
      m.scenes.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    raise(Errc::kDecodeError, std::string("manifest field error: ") + e.what());
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) raise(Errc::kIoError, "cannot open manifest " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return manifest_from_json(text);
}

void save_manifest(const Manifest& m, const std::filesystem::path& file) {
  const std::string text = manifest_to_json(m);
  std::ofstream out(file, std::ios::binary);
  if (!out) raise(Errc::kIoError, "cannot write manifest " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) raise(Errc::kIoError, "short write on " + file.string());
}

// ---------------------------------------------------------------------------

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) raise(Errc::kIoError, "cannot open " + file.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_bytes(std::span<const uint8_t> bytes, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) raise(Errc::kIoError, "cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::kIoError, "short write on " + file.string());
}

}  // namespace hevs
