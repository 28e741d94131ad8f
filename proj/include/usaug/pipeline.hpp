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

#ifndef USAUG_PIPELINE_HPP
#define USAUG_PIPELINE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug {

enum class TransformId {
  B00, B01, B02, B03, B04, B05,
  U00, U01, U02, U03, U04, U05, U06, U07, U08, U09, U10, U11,
};

inline constexpr int kTransformCount = 18;

std::string_view to_string(TransformId id) noexcept;
TransformId transform_id_from_string(std::string_view s);
/// Human-readable name, e.g. "Crop and resize".
std::string_view display_name(TransformId id) noexcept;
std::span<const TransformId> all_transform_ids() noexcept;

/// Closed interval [lo, hi] that a parameter is drawn from.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Range&) const = default;
};

using ParamValue = std::variant<bool, long long, double, std::string, Range, std::vector<std::string>>;

/// Ordered key/value parameters of one transform.
class ParamSet {
 public:
  ParamSet() = default;

  /// Full default parameters for a transform.
  static ParamSet defaults(TransformId id);

  const std::vector<std::pair<std::string, ParamValue>>& entries() const noexcept { return entries_; }
  bool contains(std::string_view key) const noexcept;
  const ParamValue& get(std::string_view key) const;
  /// Replaces an existing key. Throws ParameterError for unknown keys or a kind mismatch.
  void set(std::string_view key, ParamValue value);

  Range range(std::string_view key) const;
  double number(std::string_view key) const;
  long long integer(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  const std::vector<std::string>& list(std::string_view key) const;

  bool operator==(const ParamSet&) const = default;

 private:
  std::vector<std::pair<std::string, ParamValue>> entries_;
  void add(std::string key, ParamValue value) { entries_.emplace_back(std::move(key), std::move(value)); }
};

/// Throws ParameterError when a value lies outside the transform's domain.
void validate_params(TransformId id, const ParamSet& params);

struct TransformSpec {
  TransformId id = TransformId::B00;
  double probability = 1.0;
  ParamSet params;

  TransformSpec() = default;
  TransformSpec(TransformId i, double p);
  TransformSpec(TransformId i, double p, ParamSet ps);
  bool operator==(const TransformSpec&) const = default;
};

struct PipelineConfig {
  std::string name;
  std::vector<TransformSpec> transforms;
  std::uint64_t master_seed = 0;
  int views_per_image = 2;

  void validate() const;
  bool operator==(const PipelineConfig&) const = default;
};

/// Accepts BYOL, AugUS-O, AugUS-D and CropOnly, case-insensitively and with
/// '-', '_' or nothing between words (e.g. "augus-o", "crop-only").
PipelineConfig preset(std::string_view name);
std::vector<std::string> preset_names();

struct PipelineResult {
  Image image;
  BeamDescriptor beam;
  std::vector<std::string> warnings;
  /// Transforms that were drawn for inclusion and ran, in order.
  std::vector<TransformId> applied;
};

/**
 * Applies one transform. The parameter draws always come from `stream`
 * (so their number does not depend on `included`); per-pixel noise comes
 * from a stream derived from it. Returns the input unchanged when not included.
 */
PipelineResult apply_transform(const TransformSpec& spec, const Image& image,
                               const BeamDescriptor& beam, RngStream& stream, bool included = true);

/**
 * Runs the transforms in order. Transform k with occurrence n of its id uses
 * the sub-stream stream.derive(key(id, n)): one Bernoulli inclusion draw,
 * then the parameter draws. Geometry failures skip the transform and add a
 * warning.
 */
PipelineResult apply_pipeline(const PipelineConfig& config, const Image& image,
                              const BeamDescriptor& beam, const RngStream& stream);

/// Sub-stream key used for the n-th occurrence of a transform id.
std::uint64_t transform_stream_key(TransformId id, int occurrence) noexcept;

/// Views 0 and 1 of an image under the same config.
std::pair<PipelineResult, PipelineResult> make_positive_pair(const PipelineConfig& config,
                                                             const Image& image,
                                                             const BeamDescriptor& beam,
                                                             std::int64_t image_id);

/// Views 0 .. views_per_image-1.
std::vector<PipelineResult> make_views(const PipelineConfig& config, const Image& image,
                                       const BeamDescriptor& beam, std::int64_t image_id);

inline constexpr int kConfigSchemaVersion = 1;

std::string config_to_json(const PipelineConfig& config);
/// Parses a config document. Params are overrides merged onto the defaults.
PipelineConfig config_from_json(std::string_view text);

/// Resolves a preset name or a path to a JSON config file.
PipelineConfig load_pipeline(std::string_view name_or_path);

/// Fixed-layout text table of a config: header lines, then one row per transform.
std::string render_config(const PipelineConfig& config);

/// Shortest round-trip decimal text of a double ("1", "0.08", "1.3333333333333333").
std::string format_number(double v);

}  // namespace usaug

#endif  // USAUG_PIPELINE_HPP
