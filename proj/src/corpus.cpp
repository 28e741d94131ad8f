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

#include "usaug/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "usaug/errors.hpp"
#include "usaug/fov.hpp"
#include "usaug/png_io.hpp"

namespace usaug {

namespace fs = std::filesystem;

namespace {

using json = nlohmann::ordered_json;

Point2 point_from_json(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("missing vertex '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParameterError(std::string("vertex '") + key + "' must be an [x, y] array");
  return {v[0].get<double>(), v[1].get<double>()};
}

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

BeamDescriptor beam_from_object(const json& j) {
  if (!j.is_object()) throw ParameterError("beam description must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    static const std::set<std::string> known = {"path", "probe_type", "p0", "p1", "p2", "p3",
                                                "p4", "theta0", "original_aspect"};
    if (!known.count(k)) throw ParameterError("unknown key '" + k + "' in beam description");
  }
  if (!j.contains("probe_type") || !j["probe_type"].is_string())
    throw ParameterError("beam description needs a string 'probe_type'");
  BeamDescriptor b;
  b.probe_type = probe_type_from_string(j["probe_type"].get<std::string>());
  b.p1 = point_from_json(j, "p1");
  b.p2 = point_from_json(j, "p2");
  b.p3 = point_from_json(j, "p3");
  b.p4 = point_from_json(j, "p4");
  if (j.contains("p0")) b.p0 = point_from_json(j, "p0");
  if (j.contains("theta0")) {
    if (!j["theta0"].is_number()) throw ParameterError("'theta0' must be a number");
    b.theta0 = j["theta0"].get<double>();
  }
  if (j.contains("original_aspect")) {
    if (!j["original_aspect"].is_number()) throw ParameterError("'original_aspect' must be a number");
    b.original_aspect = j["original_aspect"].get<double>();
  }
  if (b.is_convex() && !b.p0) {
    if (b.theta0) throw ParameterError("theta0 given without p0");
    b = rederive_apex(b);
  }
  return b;
}

json beam_to_object(const BeamDescriptor& b) {
  json j;
  j["probe_type"] = std::string(to_string(b.probe_type));
  j["p1"] = point_to_json(b.p1);
  j["p2"] = point_to_json(b.p2);
  j["p3"] = point_to_json(b.p3);
  j["p4"] = point_to_json(b.p4);
  if (b.p0) j["p0"] = point_to_json(*b.p0);
  if (b.theta0) j["theta0"] = *b.theta0;
  if (b.original_aspect) j["original_aspect"] = *b.original_aspect;
  return j;
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
  if (!out) throw IoError("write failed for " + file.string());
}

fs::path resolve(const Manifest& m, const ManifestEntry& e) {
  return e.path.is_absolute() ? e.path : m.base_dir / e.path;
}

/// Output stems, made unique by appending the entry index on collisions.
std::vector<std::string> output_stems(const Manifest& m) {
  std::vector<std::string> stems;
  std::set<std::string> used;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    std::string stem = m.entries[i].path.stem().string();
    if (stem.empty()) stem = "entry";
    if (used.count(stem)) stem += "_" + std::to_string(i);
    used.insert(stem);
    stems.push_back(stem);
  }
  return stems;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const int count = std::max(1, std::min<int>(workers > 0 ? workers : worker_count(), static_cast<int>(n)));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  if (count == 1) {
    loop();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < count; ++t) pool.emplace_back(loop);
  for (auto& th : pool) th.join();
}

struct EntryOutcome {
  bool ok = false;
  std::string error;
  std::vector<ManifestEntry> outputs;
  std::vector<std::string> warnings;
};

RunSummary collect(const Manifest& manifest, std::vector<EntryOutcome>& outcomes, const fs::path& out_dir) {
  RunSummary summary;
  summary.entries = manifest.entries.size();
  Manifest out;
  out.base_dir = out_dir;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (!o.ok) {
      summary.errors.push_back({i, manifest.entries[i].path.string(), o.error});
      continue;
    }
    ++summary.processed;
    summary.images_written += o.outputs.size();
    for (auto& w : o.warnings) summary.warnings.push_back(manifest.entries[i].path.string() + ": " + w);
    for (auto& e : o.outputs) out.entries.push_back(std::move(e));
  }
  write_text(out_dir / "manifest.json", manifest_to_json(out));
  return summary;
}

void prepare_out_dir(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Manifest parse_manifest(std::string_view text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw IoError("manifest must be an object with an 'entries' array");
  for (const auto& [k, v] : doc.items())
    if (k != "schema_version" && k != "entries") throw IoError("unknown key '" + k + "' in manifest");
  if (doc.contains("schema_version") &&
      (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kManifestSchemaVersion))
    throw IoError("unsupported manifest schema_version");
  Manifest m;
  m.base_dir = base_dir;
  for (const auto& e : doc["entries"]) {
    ManifestEntry entry;
    if (e.is_object() && e.contains("path") && e["path"].is_string()) entry.path = e["path"].get<std::string>();
    try {
      if (entry.path.empty()) throw ParameterError("entry needs a string 'path'");
      entry.beam = beam_from_object(e);
    } catch (const Error& err) {
      entry.error = err.what();
    }
    m.entries.push_back(std::move(entry));
  }
  return m;
}

Manifest load_manifest(const fs::path& file) {
  return parse_manifest(read_text(file), file.has_parent_path() ? file.parent_path() : fs::path("."));
}

std::string manifest_to_json(const Manifest& manifest) {
  json doc;
  doc["schema_version"] = kManifestSchemaVersion;
  json list = json::array();
  for (const auto& e : manifest.entries) {
    json j;
    j["path"] = e.path.generic_string();
    const json beam = beam_to_object(e.beam);
    for (const auto& [k, v] : beam.items()) j[k] = v;
    list.push_back(std::move(j));
  }
  doc["entries"] = std::move(list);
  return doc.dump(2) + "\n";
}

BeamDescriptor beam_from_json(std::string_view text) {
  try {
    return beam_from_object(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("beam description is not valid JSON: ") + e.what());
  }
}

std::string beam_to_json(const BeamDescriptor& beam) { return beam_to_object(beam).dump(2) + "\n"; }

std::string RunSummary::to_json() const {
  json doc;
  doc["entries"] = entries;
  doc["processed"] = processed;
  doc["skipped"] = skipped();
  doc["images_written"] = images_written;
  json errs = json::array();
  for (const auto& e : errors) errs.push_back({{"index", e.index}, {"path", e.path}, {"message", e.message}});
  doc["errors"] = std::move(errs);
  doc["warnings"] = warnings;
  return doc.dump();
}

int worker_count() {
  if (const char* env = std::getenv("USAUG_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunSummary run_preprocess(const Manifest& manifest, const fs::path& out_dir, PreprocessMode mode, int workers) {
  prepare_out_dir(out_dir);
  const auto stems = output_stems(manifest);
  std::vector<EntryOutcome> outcomes(manifest.entries.size());
  parallel_for(manifest.entries.size(), workers, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    EntryOutcome& o = outcomes[i];
    try {
      if (!entry.error.empty()) throw ParameterError(entry.error);
      const Image img = read_png(resolve(manifest, entry));
      PreprocessResult res = mode == PreprocessMode::linearize ? preprocess_linear_only(img, entry.beam)
                                                               : preprocess(img, entry.beam);
      const std::string name = stems[i] + ".png";
      write_png(out_dir / name, res.image);
      o.outputs.push_back({name, res.beam, {}});
      o.ok = true;
    } catch (const Error& e) {
      o.error = e.what();
    }
  });
  return collect(manifest, outcomes, out_dir);
}

RunSummary run_pair_emit(const Manifest& manifest, const PipelineConfig& config, const fs::path& out_dir,
                         int workers) {
  config.validate();
  prepare_out_dir(out_dir);
  const auto stems = output_stems(manifest);
  std::vector<EntryOutcome> outcomes(manifest.entries.size());
  parallel_for(manifest.entries.size(), workers, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    EntryOutcome& o = outcomes[i];
    try {
      if (!entry.error.empty()) throw ParameterError(entry.error);
      const PreprocessResult base = preprocess(read_png(resolve(manifest, entry)), entry.beam);
      const auto views = make_views(config, base.image, base.beam, static_cast<std::int64_t>(i));
      for (std::size_t v = 0; v < views.size(); ++v) {
        const std::string name = stems[i] + "_v" + std::to_string(v) + ".png";
        write_png(out_dir / name, views[v].image);
        o.outputs.push_back({name, views[v].beam, {}});
        for (const auto& w : views[v].warnings) o.warnings.push_back("view " + std::to_string(v) + ": " + w);
      }
      o.ok = true;
    } catch (const Error& e) {
      o.error = e.what();
    }
  });
  return collect(manifest, outcomes, out_dir);
}

std::string RuntimeReport::to_json() const {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["iterations"] = iterations;
  doc["warmup"] = warmup;
  doc["image"] = {{"height", height}, {"width", width}, {"channels", channels}};
  doc["environment"] = environment;
  json list = json::array();
  for (const auto& t : timings)
    list.push_back({{"id", std::string(to_string(t.id))},
                    {"name", std::string(display_name(t.id))},
                    {"mean_ms", t.mean_ms},
                    {"median_ms", t.median_ms},
                    {"std_ms", t.std_ms},
                    {"failures", t.failures}});
  doc["transforms"] = std::move(list);
  return doc.dump(2) + "\n";
}

RuntimeReport run_bench(const PipelineConfig& config, const Image& image, const BeamDescriptor& beam, int iters,
                        int warmup) {
  if (iters < 1) throw ParameterError("bench needs at least one iteration");
  if (warmup < 0) throw ParameterError("warmup count must be non-negative");
  config.validate();
  RuntimeReport report;
  report.iterations = iters;
  report.warmup = warmup;
  report.height = image.height();
  report.width = image.width();
  report.channels = image.channels();
  std::ostringstream env;
  env << "single-threaded; compiler ";
#if defined(__clang__)
  env << "clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  env << "gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#else
  env << "unknown";
#endif
#ifdef NDEBUG
  env << "; optimized build";
#else
  env << "; debug build";
#endif
  env << "; " << std::thread::hardware_concurrency() << " logical cores";
  report.environment = env.str();

  using clock = std::chrono::steady_clock;
  for (const auto& spec : config.transforms) {
    TransformTiming t;
    t.id = spec.id;
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(iters));
    for (int i = 0; i < warmup + iters; ++i) {
      RngStream stream = RngStream(config.master_seed, 0, i).derive(transform_stream_key(spec.id, 0));
      const auto start = clock::now();
      try {
        PipelineResult r = apply_transform(spec, image, beam, stream, true);
        (void)r;
      } catch (const GeometryError&) {
        if (i >= warmup) ++t.failures;
      }
      const auto stop = clock::now();
      if (i >= warmup) ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    t.mean_ms = mean_of(ms);
    double var = 0.0;
    for (double v : ms) var += (v - t.mean_ms) * (v - t.mean_ms);
    t.std_ms = std::sqrt(var / static_cast<double>(ms.size()));
    std::sort(ms.begin(), ms.end());
    const std::size_t n = ms.size();
    t.median_ms = n % 2 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
    report.timings.push_back(t);
  }
  return report;
}

std::string run_inspect(std::string_view pipeline) { return render_config(load_pipeline(pipeline)); }

}  // namespace usaug
