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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hevs/metrics.hpp"
#include "hevs/restore.hpp"
#include "hevs/simulate.hpp"

namespace hevs {

inline constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Ranking

struct MethodResult {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
  double time_seconds = 0.0;
};

struct LeaderboardEntry {
  int rank = 0;
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
  double time_seconds = 0.0;

  bool operator==(const LeaderboardEntry&) const = default;
};

/// Orders by PSNR descending, ties by SSIM descending, then time ascending,
/// then name; ranks are dense 1..N. The ordering is total, so permuting the
/// input never changes the output.
std::vector<LeaderboardEntry> leaderboard(std::vector<MethodResult> entries);

/// Human-readable table: rank, name, PSNR, SSIM, Time (s).
std::string format_leaderboard(const std::vector<LeaderboardEntry>& board);

// ---------------------------------------------------------------------------
// Timing

struct BenchResult {
  double median_seconds = 0.0;
  std::vector<double> samples;  // per timed repeat, warm-up excluded
  int width = 0;
  int height = 0;
  int repeats = 0;
  uint64_t seed = 0;
};

/// Median wall-clock seconds of restore() over `repeats` runs on a seeded
/// synthetic frame, after one untimed warm-up. The input is synthesized
/// before timing starts; no file I/O happens inside the timed region.
/// Runs are strictly serial.
BenchResult bench_time(const RestoreConfig& config, int width = 1920, int height = 1080,
                       int repeats = 3, uint64_t seed = 2024);

/// Middle sample, or the mean of the two middles for even counts.
double median(std::vector<double> samples);

/// The synthetic frame bench_time measures on; exposed so callers can pin
/// or inspect the workload.
RawImage synthetic_frame(const PatternSpec& spec, int width, int height, uint64_t seed);

// ---------------------------------------------------------------------------
// Experiments: restore + score + time every scene of a manifest under one or
// more configurations and rank the outcomes.

struct ExperimentConfig {
  std::string name;
  RestoreConfig restore;
};

struct ExperimentOptions {
  int threads = 1;           // scene-level parallelism; output is identical for any value
  int bench_repeats = 0;     // 0 = skip timing so reports are byte-stable across reruns
  uint64_t bench_seed = 2024;
  std::filesystem::path results_dir;  // when set, restored PNGs land in <dir>/<config>/
};

struct RunRecord {
  std::string config_name;
  std::string config_hash;  // hex digest of the canonical config encoding
  std::string version;
  uint64_t dataset_seed = 0;
  RestoreConfig config;  // embedded so a record suffices to replay the run
  MetricReport report;
  std::vector<double> timing_samples;
  double time_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<LeaderboardEntry> board;
};

ExperimentResult run_experiment(const Manifest& manifest, const std::filesystem::path& base_dir,
                                const std::vector<ExperimentConfig>& configs,
                                const ExperimentOptions& options);

/// Deterministic JSON: identical inputs yield byte-identical text (timing
/// fields appear only when bench_repeats > 0).
std::string experiment_to_json(const ExperimentResult& result, const ExperimentOptions& options);

/// FNV-1a digest of the canonical config encoding, as fixed-width hex.
std::string config_hash(const RestoreConfig& config);

/// JSON array of {name, dpc, median_threshold, demosaic, radius, pattern?};
/// omitted fields take RestoreConfig defaults with `fallback_spec`.
std::vector<ExperimentConfig> parse_experiment_configs(const std::string& json_text,
                                                       const PatternSpec& fallback_spec);

/// The stock comparison pair: bilinear vs gradient-corrected demosaic.
std::vector<ExperimentConfig> default_experiment_configs(const PatternSpec& spec);

}  // namespace hevs
