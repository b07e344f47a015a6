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

#include "hevs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hevs/rng.hpp"

namespace hevs {

namespace {
using json = nlohmann::json;
}

// ---------------------------------------------------------------------------
// Ranking

std::vector<LeaderboardEntry> leaderboard(std::vector<MethodResult> entries) {
  if (entries.empty()) raise(Errc::kInvalidArgument, "leaderboard needs at least one entry");
  std::sort(entries.begin(), entries.end(), [](const MethodResult& a, const MethodResult& b) {
    if (a.psnr != b.psnr) return a.psnr > b.psnr;
    if (a.ssim != b.ssim) return a.ssim > b.ssim;
    if (a.time_seconds != b.time_seconds) return a.time_seconds < b.time_seconds;
    return a.name < b.name;
  });
  std::vector<LeaderboardEntry> board;
  board.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i)
    board.push_back({static_cast<int>(i) + 1, entries[i].name, entries[i].psnr, entries[i].ssim,
                     entries[i].time_seconds});
  return board;
}

std::string format_leaderboard(const std::vector<LeaderboardEntry>& board) {
  size_t name_width = 4;
  for (const auto& e : board) name_width = std::max(name_width, e.name.size());
  std::ostringstream out;
  out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(name_width) + 2)
      << "name" << std::right << std::setw(10) << "PSNR" << std::setw(9) << "SSIM"
      << std::setw(11) << "Time (s)" << '\n';
  out << std::fixed;
  for (const auto& e : board) {
    out << std::left << std::setw(6) << e.rank << std::setw(static_cast<int>(name_width) + 2)
        << e.name << std::right << std::setprecision(4) << std::setw(10) << e.psnr
        << std::setw(9) << e.ssim << std::setprecision(3) << std::setw(11) << e.time_seconds
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Timing

double median(std::vector<double> samples) {
  if (samples.empty()) raise(Errc::kInvalidArgument, "median of empty sample set");
  std::sort(samples.begin(), samples.end());
  const size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return 0.5 * (samples[mid - 1] + samples[mid]);
}

RawImage synthetic_frame(const PatternSpec& spec, int width, int height, uint64_t seed) {
  Rng rng(seed);
  RgbImage scene(width, height);
  for (uint8_t& v : scene.pixels) v = static_cast<uint8_t>(rng.bounded(256));
  DefectModel model;
  model.seed = seed ^ 0x9E3779B97F4A7C15ull;
  auto [raw, mask] = inject_defects(mosaic(scene, spec), event_mask(spec, width, height), model);
  (void)mask;
  return raw;
}

BenchResult bench_time(const RestoreConfig& config, int width, int height, int repeats,
                       uint64_t seed) {
  if (repeats < 1) raise(Errc::kInvalidArgument, "bench repeats must be >= 1");
  const RawImage input = synthetic_frame(config.spec, width, height, seed);

  BenchResult result;
  result.width = width;
  result.height = height;
  result.repeats = repeats;
  result.seed = seed;

  volatile uint8_t sink = 0;  // keep the optimizer honest
  {
    const RgbImage warmup = restore(input, config);
    sink = warmup.pixels[0];
  }
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const RgbImage out = restore(input, config);
    const auto stop = std::chrono::steady_clock::now();
    sink = out.pixels[0];
    result.samples.push_back(std::chrono::duration<double>(stop - start).count());
  }
  (void)sink;
  result.median_seconds = median(result.samples);
  return result;
}

// ---------------------------------------------------------------------------
// Experiments

std::string config_hash(const RestoreConfig& config) {
  std::string canon = config.spec.to_string();
  canon += ";dpc=";
  canon += dpc_mode_name(config.dpc);
  canon += ";threshold=" + std::to_string(config.median_threshold);
  canon += ";demosaic=";
  canon += demosaic_mode_name(config.demosaic);
  canon += ";radius=" + std::to_string(config.radius);

  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace {

json config_to_json(const RestoreConfig& c) {
  return {{"pattern", c.spec.to_string()},
          {"dpc", dpc_mode_name(c.dpc)},
          {"median_threshold", c.median_threshold},
          {"demosaic", demosaic_mode_name(c.demosaic)},
          {"radius", c.radius}};
}

struct SceneOutcome {
  ImageScore score;
  std::string error;  // empty on success
};

}  // namespace

ExperimentResult run_experiment(const Manifest& manifest, const std::filesystem::path& base_dir,
                                const std::vector<ExperimentConfig>& configs,
                                const ExperimentOptions& options) {
  namespace fs = std::filesystem;
  if (configs.empty()) raise(Errc::kInvalidArgument, "run_experiment needs at least one config");
  if (manifest.scenes.empty()) raise(Errc::kInvalidArgument, "manifest has no scenes");
  const int threads = std::max(1, options.threads);

  ExperimentResult result;
  std::vector<MethodResult> methods;

  for (const ExperimentConfig& config : configs) {
    validate_config(config.restore);
    fs::path config_out;
    if (!options.results_dir.empty()) {
      config_out = options.results_dir / config.name;
      fs::create_directories(config_out);
    }

    std::vector<SceneOutcome> outcomes(manifest.scenes.size());
    const auto worker = [&](size_t begin, size_t step) {
      for (size_t i = begin; i < manifest.scenes.size(); i += step) {
        const SceneEntry& scene = manifest.scenes[i];
        try {
          const RawImage raw =
              read_raw_file(base_dir / scene.raw, scene.width, scene.height);
          const RgbImage restored = restore(raw, config.restore);
          const RgbImage label = read_rgb_file(base_dir / scene.label);
          if (restored.width != label.width || restored.height != label.height)
            raise(Errc::kDimensionMismatch, "restored size does not match label");
          outcomes[i].score = {scene.name, psnr(restored, label), ssim(restored, label)};
          if (!config_out.empty()) write_rgb_file(restored, config_out / (scene.name + ".png"));
        } catch (const std::exception& e) {
          outcomes[i].error = e.what();
        }
      }
    };

    if (threads == 1 || manifest.scenes.size() <= 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> pool;
      const int n = std::min<int>(threads, static_cast<int>(manifest.scenes.size()));
      pool.reserve(n);
      for (int t = 0; t < n; ++t) pool.emplace_back(worker, t, n);
      for (auto& t : pool) t.join();
    }

    RunRecord record;
    record.config_name = config.name;
    record.config_hash = config_hash(config.restore);
    record.version = kToolVersion;
    record.dataset_seed = manifest.seed;
    record.config = config.restore;
    double psnr_sum = 0.0, ssim_sum = 0.0;
    for (size_t i = 0; i < outcomes.size(); ++i) {
      if (!outcomes[i].error.empty())
        raise(Errc::kIoError,
              "scene '" + manifest.scenes[i].name + "': " + outcomes[i].error);
      psnr_sum += outcomes[i].score.psnr;
      ssim_sum += outcomes[i].score.ssim;
      record.report.images.push_back(outcomes[i].score);
    }
    record.report.psnr = psnr_sum / static_cast<double>(outcomes.size());
    record.report.ssim = ssim_sum / static_cast<double>(outcomes.size());

    // Timing runs strictly serial, after the scene work is done.
    if (options.bench_repeats > 0) {
      const BenchResult bench = bench_time(config.restore, 1920, 1080, options.bench_repeats,
                                           options.bench_seed);
      record.timing_samples = bench.samples;
      record.time_seconds = bench.median_seconds;
    }

    methods.push_back(
        {record.config_name, record.report.psnr, record.report.ssim, record.time_seconds});
    result.records.push_back(std::move(record));
  }

  result.board = leaderboard(std::move(methods));
  return result;
}

std::string experiment_to_json(const ExperimentResult& result,
                               const ExperimentOptions& options) {
  json records = json::array();
  for (const RunRecord& r : result.records) {
    json images = json::array();
    for (const ImageScore& s : r.report.images)
      images.push_back({{"name", s.name}, {"psnr", s.psnr}, {"ssim", s.ssim}});
    json rec = {{"name", r.config_name},
                {"config_hash", r.config_hash},
                {"config", config_to_json(r.config)},
                {"version", r.version},
                {"dataset_seed", r.dataset_seed},
                {"psnr", r.report.psnr},
                {"ssim", r.report.ssim},
                {"images", images}};
    if (!r.timing_samples.empty()) {
      rec["time_seconds"] = r.time_seconds;
      rec["timing_samples"] = r.timing_samples;
    }
    records.push_back(std::move(rec));
  }
  json board = json::array();
  for (const LeaderboardEntry& e : result.board) {
    json row = {{"rank", e.rank}, {"name", e.name}, {"psnr", e.psnr}, {"ssim", e.ssim}};
    if (options.bench_repeats > 0) row["time_seconds"] = e.time_seconds;
    board.push_back(std::move(row));
  }
  json j = {{"version", kToolVersion},
            {"timing_note", "Timings are machine-specific; compare only runs from the same host."},
            {"threads", options.threads},
            {"bench_repeats", options.bench_repeats},
            {"records", records},
            {"leaderboard", board}};
  return j.dump(2) + "\n";
}

std::vector<ExperimentConfig> parse_experiment_configs(const std::string& json_text,
                                                       const PatternSpec& fallback_spec) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    raise(Errc::kDecodeError, std::string("config list is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty())
    raise(Errc::kInvalidArgument, "config list must be a non-empty JSON array");

  std::vector<ExperimentConfig> configs;
  for (const json& item : j) {
    ExperimentConfig c;
    c.restore.spec = fallback_spec;
    try {
      c.name = item.at("name").get<std::string>();
      if (item.contains("pattern")) c.restore.spec = parse_pattern(item["pattern"]);
      if (item.contains("dpc")) c.restore.dpc = parse_dpc_mode(item["dpc"]);
      if (item.contains("median_threshold")) c.restore.median_threshold = item["median_threshold"];
      if (item.contains("demosaic")) c.restore.demosaic = parse_demosaic_mode(item["demosaic"]);
      if (item.contains("radius")) c.restore.radius = item["radius"];
    } catch (const json::exception& e) {
      raise(Errc::kDecodeError, std::string("config entry error: ") + e.what());
    }
    validate_config(c.restore);
    configs.push_back(std::move(c));
  }
  return configs;
}

std::vector<ExperimentConfig> default_experiment_configs(const PatternSpec& spec) {
  ExperimentConfig bilinear{"bilinear", RestoreConfig{}};
  bilinear.restore.spec = spec;
  bilinear.restore.demosaic = DemosaicMode::kBilinear;
  ExperimentConfig gradient{"gradient", RestoreConfig{}};
  gradient.restore.spec = spec;
  gradient.restore.demosaic = DemosaicMode::kGradientCorrected;
  return {std::move(bilinear), std::move(gradient)};
}

}  // namespace hevs
