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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hevs/harness.hpp"
#include "hevs/metrics.hpp"
#include "hevs/raw_io.hpp"
#include "hevs/restore.hpp"
#include "hevs/simulate.hpp"

using namespace hevs;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct GlobalArgs {
  std::string pattern_file;
  uint64_t seed = 2024;
  int threads = 1;
  std::string json_out;
};

PatternSpec resolve_pattern(const GlobalArgs& args) {
  if (args.pattern_file.empty()) return default_pattern();
  return load_pattern(args.pattern_file);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::kIoError, "cannot write " + path.string());
  out << text;
}

void maybe_write_json(const GlobalArgs& args, const json& j) {
  if (args.json_out.empty()) return;
  write_text(args.json_out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string labels_dir;
  std::string out_dir;
  double density = 0.001;
  std::string mode = "uniform";
};

int cmd_simulate(const GlobalArgs& g, const SimulateArgs& a) {
  DefectModel model;
  model.density = a.density;
  model.mode = parse_defect_mode(a.mode);
  model.seed = g.seed;
  const Manifest manifest = generate_dataset(a.labels_dir, a.out_dir, resolve_pattern(g),
                                             model, g.seed);
  std::cout << "simulated " << manifest.scenes.size() << " scene(s) into " << a.out_dir
            << " (manifest.json written)\n";
  maybe_write_json(g, {{"scenes", manifest.scenes.size()},
                       {"out", a.out_dir},
                       {"seed", g.seed},
                       {"density", model.density},
                       {"mode", defect_mode_name(model.mode)}});
  return 0;
}

// ---------------------------------------------------------------------------

struct RestoreArgs {
  std::string input;
  std::string out_dir;
  int width = 0;
  int height = 0;
  std::string dpc = "both";
  std::string demosaic = "gradient";
  int threshold = 64;
  int radius = 4;
};

RestoreConfig build_config(const GlobalArgs& g, const RestoreArgs& a) {
  RestoreConfig config;
  config.spec = resolve_pattern(g);
  config.dpc = parse_dpc_mode(a.dpc);
  config.demosaic = parse_demosaic_mode(a.demosaic);
  config.median_threshold = a.threshold;
  config.radius = a.radius;
  validate_config(config);
  return config;
}

int cmd_restore(const GlobalArgs& g, const RestoreArgs& a) {
  const RestoreConfig config = build_config(g, a);
  fs::create_directories(a.out_dir);

  const fs::path input(a.input);
  if (fs::is_regular_file(input) && input.extension() == ".bin") {
    if (a.width <= 0 || a.height <= 0)
      raise(Errc::kInvalidArgument, "--width and --height are required for .bin input");
    const RawImage raw = read_raw_file(input, a.width, a.height);
    const fs::path out = fs::path(a.out_dir) / (input.stem().string() + ".png");
    write_rgb_file(restore(raw, config), out);
    std::cout << "restored 1 frame -> " << out.string() << '\n';
    maybe_write_json(g, {{"restored", 1}, {"out", a.out_dir}});
    return 0;
  }

  const fs::path manifest_path =
      fs::is_directory(input) ? input / "manifest.json" : input;
  if (!fs::is_regular_file(manifest_path))
    raise(Errc::kIoError, "no manifest found at " + manifest_path.string() +
                              " (pass a .bin file, a dataset directory, or a manifest)");
  const Manifest manifest = load_manifest(manifest_path);
  const fs::path base = manifest_path.parent_path();

  const int threads = std::max(1, g.threads);
  std::vector<std::string> errors(manifest.scenes.size());
  const auto worker = [&](size_t begin, size_t step) {
    for (size_t i = begin; i < manifest.scenes.size(); i += step) {
      const SceneEntry& scene = manifest.scenes[i];
      try {
        const RawImage raw = read_raw_file(base / scene.raw, scene.width, scene.height);
        write_rgb_file(restore(raw, config), fs::path(a.out_dir) / (scene.name + ".png"));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(manifest.scenes.size()));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker, t, n);
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      raise(Errc::kIoError, "scene '" + manifest.scenes[i].name + "': " + errors[i]);

  std::cout << "restored " << manifest.scenes.size() << " frame(s) -> " << a.out_dir << '\n';
  maybe_write_json(g, {{"restored", manifest.scenes.size()}, {"out", a.out_dir}});
  return 0;
}

// ---------------------------------------------------------------------------

struct ScoreArgs {
  std::string results_dir;
  std::string labels_dir;
  std::string out_json;
  std::string out_csv;
};

int cmd_score(const GlobalArgs& g, const ScoreArgs& a) {
  const MetricReport report = score_set(a.results_dir, a.labels_dir);
  std::cout << "scored " << report.images.size() << " image(s): psnr " << report.psnr
            << " dB, ssim " << report.ssim << '\n';
  if (!a.out_json.empty()) write_text(a.out_json, report_to_json(report));
  if (!a.out_csv.empty()) write_text(a.out_csv, report_to_csv(report));
  if (!g.json_out.empty()) write_text(g.json_out, report_to_json(report));
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  int width = 1920;
  int height = 1080;
  int repeats = 3;
  RestoreArgs config;
};

int cmd_bench(const GlobalArgs& g, const BenchArgs& a) {
  const RestoreConfig config = build_config(g, a.config);
  const BenchResult result = bench_time(config, a.width, a.height, a.repeats, g.seed);
  std::cout << "note: timings are machine-specific; compare only runs from the same host\n"
            << "bench " << a.width << "x" << a.height << ", " << a.repeats
            << " repeat(s) after 1 warm-up, single-threaded\n"
            << "median " << result.median_seconds << " s (samples:";
  for (double s : result.samples) std::cout << ' ' << s;
  std::cout << ")\n";
  maybe_write_json(g, {{"width", a.width},
                       {"height", a.height},
                       {"repeats", a.repeats},
                       {"seed", g.seed},
                       {"median_seconds", result.median_seconds},
                       {"samples", result.samples},
                       {"version", kToolVersion}});
  return 0;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string manifest_file;
  std::string configs_file;
  std::string out_dir;
  int bench_repeats = 0;
};

int cmd_run(const GlobalArgs& g, const RunArgs& a) {
  const Manifest manifest = load_manifest(a.manifest_file);
  const PatternSpec spec = resolve_pattern(g);

  std::vector<ExperimentConfig> configs;
  if (a.configs_file.empty()) {
    configs = default_experiment_configs(spec);
  } else {
    std::ifstream in(a.configs_file);
    if (!in) raise(Errc::kIoError, "cannot open config list " + a.configs_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    configs = parse_experiment_configs(text, spec);
  }

  ExperimentOptions options;
  options.threads = g.threads;
  options.bench_repeats = a.bench_repeats;
  options.bench_seed = g.seed;
  if (!a.out_dir.empty()) options.results_dir = a.out_dir;

  const ExperimentResult result =
      run_experiment(manifest, fs::path(a.manifest_file).parent_path(), configs, options);
  if (a.bench_repeats > 0)
    std::cout << "note: timings are machine-specific; compare only runs from the same host\n";
  std::cout << format_leaderboard(result.board);
  if (!g.json_out.empty()) write_text(g.json_out, experiment_to_json(result, options));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HybridEVS camera raw toolkit: simulate, restore, score, bench, run"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--pattern", g.pattern_file, "Sensor tile file: 4 lines of R/G/B/E codes")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for every stochastic step (default 2024)");
  app.add_option("--threads", g.threads, "Scene-level worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--json", g.json_out, "Write the subcommand's JSON summary to this file");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate HybridEVS raw inputs plus labels from clean RGB images");
  simulate->fallthrough();
  simulate->add_option("--labels", sim.labels_dir, "Directory of ground-truth PNGs")
      ->required()
      ->check(CLI::ExistingDirectory);
  simulate->add_option("--out", sim.out_dir, "Output dataset directory")->required();
  simulate->add_option("--density", sim.density, "Defect density over non-event pixels")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--mode", sim.mode, "Defect mode: stuck-low, stuck-high or uniform");

  RestoreArgs res;
  CLI::App* restore_cmd = app.add_subcommand(
      "restore", "Reconstruct RGB images from .bin frames or a dataset manifest");
  restore_cmd->fallthrough();
  restore_cmd->add_option("--input", res.input, "A .bin file, dataset directory, or manifest")
      ->required();
  restore_cmd->add_option("--out", res.out_dir, "Output directory for PNGs")->required();
  restore_cmd->add_option("--width", res.width, "Frame width (for .bin input)");
  restore_cmd->add_option("--height", res.height, "Frame height (for .bin input)");
  restore_cmd->add_option("--dpc", res.dpc, "Defect correction: none, zero, median or both");
  restore_cmd->add_option("--demosaic", res.demosaic, "Demosaic mode: bilinear or gradient");
  restore_cmd->add_option("--threshold", res.threshold,
                          "Median-deviation threshold in 10-bit units");
  restore_cmd->add_option("--radius", res.radius, "Neighborhood radius for DPC/inpainting");

  ScoreArgs sc;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Score restored images against ground-truth labels");
  score_cmd->fallthrough();
  score_cmd->add_option("--results", sc.results_dir, "Directory of restored PNGs")
      ->required()
      ->check(CLI::ExistingDirectory);
  score_cmd->add_option("--labels", sc.labels_dir, "Directory of label PNGs")
      ->required()
      ->check(CLI::ExistingDirectory);
  score_cmd->add_option("--out", sc.out_json, "Write the JSON report here");
  score_cmd->add_option("--csv", sc.out_csv, "Write a CSV mirror of the report here");

  BenchArgs be;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time restore() on a seeded synthetic frame");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--width", be.width, "Frame width (default 1920)");
  bench_cmd->add_option("--height", be.height, "Frame height (default 1080)");
  bench_cmd->add_option("--repeats", be.repeats, "Timed repeats after one warm-up")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--dpc", be.config.dpc, "Defect correction mode");
  bench_cmd->add_option("--demosaic", be.config.demosaic, "Demosaic mode");
  bench_cmd->add_option("--threshold", be.config.threshold, "Median-deviation threshold");
  bench_cmd->add_option("--radius", be.config.radius, "Neighborhood radius");

  RunArgs ru;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Restore, score and rank a manifest under one or more configurations");
  run_cmd->fallthrough();
  run_cmd->add_option("--manifest", ru.manifest_file, "Dataset manifest JSON")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--configs", ru.configs_file,
                      "JSON array of configurations (default: bilinear vs gradient)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", ru.out_dir, "Directory for restored PNGs per configuration");
  run_cmd->add_option("--bench-repeats", ru.bench_repeats,
                      "Timed 1080p repeats per configuration (0 = skip timing)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(g, sim);
    if (restore_cmd->parsed()) return cmd_restore(g, res);
    if (score_cmd->parsed()) return cmd_score(g, sc);
    if (bench_cmd->parsed()) return cmd_bench(g, be);
    if (run_cmd->parsed()) return cmd_run(g, ru);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
