/*
 * Copyright (c) 2026 The usaug Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// usaug command-line front end: preprocess, pair, bench, inspect.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "usaug/corpus.hpp"
#include "usaug/errors.hpp"
#include "usaug/fov.hpp"
#include "usaug/pipeline.hpp"
#include "usaug/png_io.hpp"

namespace {

constexpr int kExitSkipped = 1;
constexpr int kExitFailure = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usaug::IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usaug::IoError("cannot write " + path);
  out << text;
}

int report_run(const char* command, const usaug::RunSummary& s) {
  std::cout << command << ": " << s.processed << "/" << s.entries << " entries, " << s.images_written
            << " images written, " << s.skipped() << " skipped\n";
  for (const auto& w : s.warnings) std::cout << "warning: " << w << "\n";
  if (s.skipped() == 0) return 0;
  std::cerr << s.to_json() << "\n";
  return kExitSkipped;
}

int fail(const std::string& message) {
  nlohmann::json j;
  j["error"] = message;
  std::cerr << j.dump() << "\n";
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultrasound-aware image augmentation toolkit"};
  app.require_subcommand(1);

  std::string manifest_path, out_dir, pipeline_name, image_path, beam_path, report_path;
  bool linear_only = false;
  bool as_json = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> views;
  int iters = 1000;
  int warmup = 10;
  int workers = 0;

  auto* pre = app.add_subcommand("preprocess", "Mask and crop every manifest entry to its field of view");
  pre->add_option("--manifest", manifest_path, "Input manifest (JSON)")->required();
  pre->add_option("--out", out_dir, "Output directory")->required();
  pre->add_flag("--linear-only", linear_only, "Also convert convex beams to linear ones");
  pre->add_option("--workers", workers, "Worker threads (default: USAUG_WORKERS or core count)");

  auto* pair = app.add_subcommand("pair", "Write augmented views for every manifest entry");
  pair->add_option("--manifest", manifest_path, "Input manifest (JSON)")->required();
  pair->add_option("--pipeline", pipeline_name, "byol, augus-o, augus-d, crop-only or a config file")->required();
  pair->add_option("--seed", seed, "Master seed (overrides the config)");
  pair->add_option("--views", views, "Views per image (overrides the config)")->check(CLI::PositiveNumber);
  pair->add_option("--out", out_dir, "Output directory")->required();
  pair->add_option("--workers", workers, "Worker threads (default: USAUG_WORKERS or core count)");

  auto* bench = app.add_subcommand("bench", "Time each transform of a pipeline on one image");
  bench->add_option("--pipeline", pipeline_name, "Preset name or config file")->required();
  bench->add_option("--image", image_path, "Input PNG")->required();
  bench->add_option("--beam", beam_path, "Beam description (JSON)")->required();
  bench->add_option("--iters", iters, "Timed invocations per transform")->check(CLI::PositiveNumber);
  bench->add_option("--warmup", warmup, "Untimed invocations per transform")->check(CLI::NonNegativeNumber);
  bench->add_option("--report", report_path, "Report file (default: standard output)");

  auto* inspect = app.add_subcommand("inspect", "Print a pipeline's transforms and parameter bounds");
  inspect->add_option("--pipeline", pipeline_name, "Preset name or config file")->required();
  inspect->add_flag("--json", as_json, "Print the resolved config as JSON instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pre) {
      const auto manifest = usaug::load_manifest(manifest_path);
      const auto mode = linear_only ? usaug::PreprocessMode::linearize : usaug::PreprocessMode::crop;
      return report_run("preprocess", usaug::run_preprocess(manifest, out_dir, mode, workers));
    }
    if (*pair) {
      auto config = usaug::load_pipeline(pipeline_name);
      if (seed) config.master_seed = *seed;
      if (views) config.views_per_image = *views;
      const auto manifest = usaug::load_manifest(manifest_path);
      return report_run("pair", usaug::run_pair_emit(manifest, config, out_dir, workers));
    }
    if (*bench) {
      const auto config = usaug::load_pipeline(pipeline_name);
      const auto beam = usaug::beam_from_json(read_file(beam_path));
      const auto base = usaug::preprocess(usaug::read_png(image_path), beam);
      const auto report = usaug::run_bench(config, base.image, base.beam, iters, warmup);
      if (report_path.empty())
        std::cout << report.to_json();
      else
        write_file(report_path, report.to_json());
      return 0;
    }
    if (*inspect) {
      const auto config = usaug::load_pipeline(pipeline_name);
      std::cout << (as_json ? usaug::config_to_json(config) : usaug::render_config(config));
      return 0;
    }
  } catch (const usaug::Error& e) {
    return fail(e.what());
  } catch (const std::exception& e) {
    return fail(std::string("unexpected failure: ") + e.what());
  }
  return 0;
}
