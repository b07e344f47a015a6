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

#include "hevs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hevs/raw_io.hpp"

namespace hevs {

namespace {

void require_same_size(const RgbImage& a, const RgbImage& b, const std::string& who) {
  if (a.width != b.width || a.height != b.height)
    raise(Errc::kDimensionMismatch, who + ": " + std::to_string(a.width) + "x" +
                                        std::to_string(a.height) + " vs " +
                                        std::to_string(b.width) + "x" + std::to_string(b.height));
}

}  // namespace

double psnr(const RgbImage& a, const RgbImage& b) {
  require_same_size(a, b, "psnr");
  uint64_t sse = 0;
  for (size_t i = 0; i < a.pixels.size(); ++i) {
    const int d = static_cast<int>(a.pixels[i]) - static_cast<int>(b.pixels[i]);
    sse += static_cast<uint64_t>(d) * d;
  }
  if (sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

std::array<double, kSsimWindow> gaussian_window() {
  std::array<double, kSsimWindow> w{};
  const int half = kSsimWindow / 2;
  double total = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - half;
    w[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

// Separable valid-region Gaussian filter: rows first into `tmp`
// (height x valid_w), then columns into `out` (valid_h x valid_w).
void gauss_valid(const std::vector<double>& plane, int width, int height,
                 const std::array<double, kSsimWindow>& w, std::vector<double>& tmp,
                 std::vector<double>& out) {
  const int vw = width - kSsimWindow + 1;
  const int vh = height - kSsimWindow + 1;
  tmp.assign(static_cast<size_t>(vw) * height, 0.0);
  for (int y = 0; y < height; ++y) {
    const double* row = &plane[static_cast<size_t>(y) * width];
    double* trow = &tmp[static_cast<size_t>(y) * vw];
    for (int u = 0; u < vw; ++u) {
      double acc = 0.0;
      for (int i = 0; i < kSsimWindow; ++i) acc += w[i] * row[u + i];
      trow[u] = acc;
    }
  }
  out.assign(static_cast<size_t>(vw) * vh, 0.0);
  for (int v = 0; v < vh; ++v) {
    double* orow = &out[static_cast<size_t>(v) * vw];
    for (int j = 0; j < kSsimWindow; ++j) {
      const double wj = w[j];
      const double* trow = &tmp[static_cast<size_t>(v + j) * vw];
      for (int u = 0; u < vw; ++u) orow[u] += wj * trow[u];
    }
  }
}

double ssim_channel(const RgbImage& a, const RgbImage& b, int channel,
                    const std::array<double, kSsimWindow>& w) {
  const int width = a.width, height = a.height;
  const size_t n = static_cast<size_t>(width) * height;
  std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
  for (size_t i = 0; i < n; ++i) {
    const double va = a.pixels[3 * i + channel];
    const double vb = b.pixels[3 * i + channel];
    pa[i] = va;
    pb[i] = vb;
    paa[i] = va * va;
    pbb[i] = vb * vb;
    pab[i] = va * vb;
  }

  std::vector<double> tmp, mu_a, mu_b, m_aa, m_bb, m_ab;
  gauss_valid(pa, width, height, w, tmp, mu_a);
  gauss_valid(pb, width, height, w, tmp, mu_b);
  gauss_valid(paa, width, height, w, tmp, m_aa);
  gauss_valid(pbb, width, height, w, tmp, m_bb);
  gauss_valid(pab, width, height, w, tmp, m_ab);

  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  double acc = 0.0;
  for (size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double var_a = m_aa[i] - ma * ma;
    const double var_b = m_bb[i] - mb * mb;
    const double cov = m_ab[i] - ma * mb;
    acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
           ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
  }
  return acc / static_cast<double>(mu_a.size());
}

}  // namespace

double ssim(const RgbImage& a, const RgbImage& b) {
  require_same_size(a, b, "ssim");
  if (a.width < kSsimWindow || a.height < kSsimWindow)
    raise(Errc::kTooSmall, "image must be at least " + std::to_string(kSsimWindow) + "x" +
                               std::to_string(kSsimWindow) + " for SSIM");
  const auto w = gaussian_window();
  double total = 0.0;
  for (int c = 0; c < 3; ++c) total += ssim_channel(a, b, c, w);
  return total / 3.0;
}

MetricReport score_pair(const std::filesystem::path& result,
                        const std::filesystem::path& label) {
  const RgbImage res = read_rgb_file(result);
  const RgbImage lab = read_rgb_file(label);
  if (res.width != lab.width || res.height != lab.height)
    raise(Errc::kDimensionMismatch, result.string() + " does not match label size");
  MetricReport report;
  report.images.push_back({result.stem().string(), psnr(res, lab), ssim(res, lab)});
  report.psnr = report.images[0].psnr;
  report.ssim = report.images[0].ssim;
  return report;
}

MetricReport score_set(const std::filesystem::path& results_dir,
                       const std::filesystem::path& labels_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(results_dir))
    raise(Errc::kIoError, "results directory not found: " + results_dir.string());
  if (!fs::is_directory(labels_dir))
    raise(Errc::kIoError, "labels directory not found: " + labels_dir.string());

  std::map<std::string, fs::path> labels, results;
  for (const auto& e : fs::directory_iterator(labels_dir))
    if (e.is_regular_file() && e.path().extension() == ".png")
      labels.emplace(e.path().stem().string(), e.path());
  for (const auto& e : fs::directory_iterator(results_dir))
    if (e.is_regular_file() && e.path().extension() == ".png")
      results.emplace(e.path().stem().string(), e.path());

  for (const auto& [stem, path] : results)
    if (!labels.count(stem))
      raise(Errc::kExtraResult, "result '" + stem + "' has no matching label");

  MetricReport report;
  double psnr_sum = 0.0, ssim_sum = 0.0;
  for (const auto& [stem, label_path] : labels) {
    auto it = results.find(stem);
    if (it == results.end())
      raise(Errc::kMissingResult, "no result for label '" + stem + "'");
    const RgbImage res = read_rgb_file(it->second);
    const RgbImage lab = read_rgb_file(label_path);
    if (res.width != lab.width || res.height != lab.height)
      raise(Errc::kDimensionMismatch, it->second.string() + " does not match label size");
    ImageScore score{stem, psnr(res, lab), ssim(res, lab)};
    psnr_sum += score.psnr;
    ssim_sum += score.ssim;
    report.images.push_back(std::move(score));
  }
  if (report.images.empty()) raise(Errc::kTooSmall, "no labels to score");
  report.psnr = psnr_sum / static_cast<double>(report.images.size());
  report.ssim = ssim_sum / static_cast<double>(report.images.size());
  return report;
}

std::string report_to_json(const MetricReport& report) {
  nlohmann::json images = nlohmann::json::array();
  for (const ImageScore& s : report.images)
    images.push_back({{"name", s.name}, {"psnr", s.psnr}, {"ssim", s.ssim}});
  nlohmann::json j = {{"aggregate", {{"psnr", report.psnr}, {"ssim", report.ssim}}},
                      {"psnr_cap_db", kPsnrCap},
                      {"images", images}};
  return j.dump(2) + "\n";
}

std::string report_to_csv(const MetricReport& report) {
  std::ostringstream out;
  out.precision(12);
  out << "name,psnr,ssim\n";
  for (const ImageScore& s : report.images)
    out << s.name << ',' << s.psnr << ',' << s.ssim << '\n';
  out << "aggregate," << report.psnr << ',' << report.ssim << '\n';
  return out.str();
}

}  // namespace hevs
