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

#include <filesystem>
#include <string>
#include <vector>

#include "hevs/image.hpp"

namespace hevs {

// Scoring conventions, pinned for reproducibility:
//  - PSNR over the joint MSE of all pixels and channels; identical images
//    are capped at 100 dB so aggregates stay finite.
//  - SSIM per channel with an 11x11 Gaussian window (sigma 1.5),
//    C1=(0.01*255)^2, C2=(0.03*255)^2, valid windows only (no padding),
//    averaged over window positions then over the three channels.
inline constexpr double kPsnrCap = 100.0;
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

/// 10*log10(255^2 / MSE). Throws DimensionMismatch. The MSE accumulates in
/// exact integer arithmetic, so the result is independent of pixel order.
double psnr(const RgbImage& a, const RgbImage& b);

/// Mean structural similarity in [-1, 1]. Throws DimensionMismatch, and
/// TooSmall when min(width, height) < 11.
double ssim(const RgbImage& a, const RgbImage& b);

struct ImageScore {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
};

/// Per-image scores plus their arithmetic means.
struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  std::vector<ImageScore> images;
};

MetricReport score_pair(const std::filesystem::path& result, const std::filesystem::path& label);

/// Scores every label against the result with the same filename stem.
/// Missing results, extra results and size mismatches are hard errors naming
/// the offending stem or file.
MetricReport score_set(const std::filesystem::path& results_dir,
                       const std::filesystem::path& labels_dir);

std::string report_to_json(const MetricReport& report);
std::string report_to_csv(const MetricReport& report);

}  // namespace hevs
