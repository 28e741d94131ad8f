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

#ifndef USAUG_CORPUS_HPP
#define USAUG_CORPUS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/image.hpp"
#include "usaug/pipeline.hpp"

namespace usaug {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

struct ManifestEntry {
  std::filesystem::path path;  ///< absolute, or relative to the manifest's directory
  BeamDescriptor beam;
  /// Set when the entry could not be parsed; such entries are skipped.
  std::string error;
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
};

/**
 * Manifest document:
 *   { "schema_version": 1,
 *     "entries": [ { "path": "a.png", "probe_type": "curvilinear",
 *                    "p1": [x, y], "p2": ..., "p3": ..., "p4": ...,
 *                    "p0": [x, y], "theta0": t, "original_aspect": a } ] }
 * p0, theta0 and original_aspect are optional; a missing apex is derived.
 * Entries are not validated here so that a bad entry can be skipped later.
 */
Manifest load_manifest(const std::filesystem::path& file);
Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
std::string manifest_to_json(const Manifest& manifest);

/// The beam part of a manifest entry (the "path" key is ignored).
BeamDescriptor beam_from_json(std::string_view text);
std::string beam_to_json(const BeamDescriptor& beam);

struct EntryError {
  std::size_t index = 0;
  std::string path;
  std::string message;
};

struct RunSummary {
  std::size_t entries = 0;
  std::size_t processed = 0;
  std::size_t images_written = 0;
  std::vector<EntryError> errors;
  std::vector<std::string> warnings;

  std::size_t skipped() const noexcept { return errors.size(); }
  /// {"entries":..,"processed":..,"skipped":..,"errors":[{"index","path","message"}]}
  std::string to_json() const;
};

/// Worker count from USAUG_WORKERS, falling back to the number of logical cores.
int worker_count();

enum class PreprocessMode { crop, linearize };

/**
 * Masks and crops every entry to its field of view, writing {stem}.png and
 * manifest.json (with the translated vertices) into out_dir. In linearize
 * mode convex beams are also converted to linear ones.
 */
RunSummary run_preprocess(const Manifest& manifest, const std::filesystem::path& out_dir,
                          PreprocessMode mode = PreprocessMode::crop, int workers = 0);

/**
 * For each entry: mask and crop to the field of view, then write
 * config.views_per_image views named {stem}_v{k}.png and a manifest.json
 * with the output beams. Entry k uses image_id k.
 */
RunSummary run_pair_emit(const Manifest& manifest, const PipelineConfig& config,
                         const std::filesystem::path& out_dir, int workers = 0);

struct TransformTiming {
  TransformId id = TransformId::B00;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double std_ms = 0.0;
  std::size_t failures = 0;
};

struct RuntimeReport {
  std::vector<TransformTiming> timings;
  int iterations = 0;
  int warmup = 0;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::string environment;

  std::string to_json() const;
};

/**
 * Times each transform of the config on its own, with probability forced to 1:
 * `warmup` untimed calls, then `iters` timed calls on the same input.
 * Single-threaded.
 */
RuntimeReport run_bench(const PipelineConfig& config, const Image& image, const BeamDescriptor& beam,
                        int iters = 1000, int warmup = 10);

/// Renders a preset or a config file as a text table.
std::string run_inspect(std::string_view pipeline);

}  // namespace usaug

#endif  // USAUG_CORPUS_HPP
