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

#include "usaug/pipeline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "usaug/errors.hpp"
#include "usaug/fov.hpp"
#include "usaug/geometry.hpp"
#include "usaug/noise.hpp"
#include "usaug/photometric.hpp"
#include "usaug/spatial.hpp"

namespace usaug {

namespace {

using json = nlohmann::ordered_json;

struct IdInfo {
  TransformId id;
  std::string_view code;
  std::string_view name;
};

constexpr std::array<IdInfo, kTransformCount> kIds = {{
    {TransformId::B00, "B00", "Crop and resize"},
    {TransformId::B01, "B01", "Horizontal reflection"},
    {TransformId::B02, "B02", "Color jitter"},
    {TransformId::B03, "B03", "Conversion to grayscale"},
    {TransformId::B04, "B04", "Gaussian blur"},
    {TransformId::B05, "B05", "Solarization"},
    {TransformId::U00, "U00", "Probe type change"},
    {TransformId::U01, "U01", "Convexity change"},
    {TransformId::U02, "U02", "Wavelet denoising"},
    {TransformId::U03, "U03", "CLAHE"},
    {TransformId::U04, "U04", "Gamma correction"},
    {TransformId::U05, "U05", "Brightness and contrast change"},
    {TransformId::U06, "U06", "Depth change simulation"},
    {TransformId::U07, "U07", "Speckle noise simulation"},
    {TransformId::U08, "U08", "Gaussian noise"},
    {TransformId::U09, "U09", "Salt & pepper noise"},
    {TransformId::U10, "U10", "Horizontal reflection"},
    {TransformId::U11, "U11", "Rotation & shift"},
}};

constexpr std::array<TransformId, kTransformCount> kIdList = {
    TransformId::B00, TransformId::B01, TransformId::B02, TransformId::B03, TransformId::B04,
    TransformId::B05, TransformId::U00, TransformId::U01, TransformId::U02, TransformId::U03,
    TransformId::U04, TransformId::U05, TransformId::U06, TransformId::U07, TransformId::U08,
    TransformId::U09, TransformId::U10, TransformId::U11};

const IdInfo& info(TransformId id) { return kIds[static_cast<std::size_t>(id)]; }

std::string lowered_compact(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

[[noreturn]] void bad_param(TransformId id, std::string_view key, std::string_view what) {
  throw ParameterError(std::string(to_string(id)) + "." + std::string(key) + ": " + std::string(what));
}

void require_range(TransformId id, const ParamSet& p, std::string_view key, double min, double max,
                   bool open_min = false) {
  const Range r = p.range(key);
  if (!(r.lo <= r.hi)) bad_param(id, key, "lower bound exceeds upper bound");
  const bool lo_ok = open_min ? r.lo > min : r.lo >= min;
  if (!lo_ok || !(r.hi <= max)) bad_param(id, key, "bounds lie outside the valid domain");
}

void require_integral(TransformId id, const ParamSet& p, std::string_view key, double min) {
  const Range r = p.range(key);
  if (r.lo != std::floor(r.lo) || r.hi != std::floor(r.hi)) bad_param(id, key, "bounds must be integers");
  if (!(r.lo >= min && r.lo <= r.hi)) bad_param(id, key, "bounds lie outside the valid domain");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

int draw_int(RngStream& s, Range r) {
  return s.uniform_int(static_cast<int>(std::lround(r.lo)), static_cast<int>(std::lround(r.hi)));
}

double draw(RngStream& s, Range r) { return s.uniform(r.lo, r.hi); }

std::string format_value(const ParamValue& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Range& r) const {
      return "[" + format_number(r.lo) + ", " + format_number(r.hi) + "]";
    }
    std::string operator()(const std::vector<std::string>& l) const {
      std::string out = "[";
      for (std::size_t i = 0; i < l.size(); ++i) out += (i ? ", " : "") + l[i];
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

std::string format_probability(double p) {
  std::string s = format_number(p);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

json value_to_json(const ParamValue& v) {
  struct Visitor {
    json operator()(bool b) const { return b; }
    json operator()(long long i) const { return i; }
    json operator()(double d) const { return d; }
    json operator()(const std::string& s) const { return s; }
    json operator()(const Range& r) const { return json::array({r.lo, r.hi}); }
    json operator()(const std::vector<std::string>& l) const { return l; }
  };
  return std::visit(Visitor{}, v);
}

ParamValue value_from_json(const ParamValue& kind, const json& j, std::string_view key) {
  auto fail = [&](std::string_view expected) -> ParameterError {
    return ParameterError("parameter '" + std::string(key) + "' must be " + std::string(expected));
  };
  switch (kind.index()) {
    case 0:
      if (!j.is_boolean()) throw fail("a boolean");
      return j.get<bool>();
    case 1:
      if (!j.is_number_integer()) throw fail("an integer");
      return j.get<long long>();
    case 2:
      if (!j.is_number()) throw fail("a number");
      return j.get<double>();
    case 3:
      if (!j.is_string()) throw fail("a string");
      return j.get<std::string>();
    case 4:
      if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw fail("a [lo, hi] array");
      return Range{j[0].get<double>(), j[1].get<double>()};
    default: {
      if (!j.is_array()) throw fail("an array of strings");
      std::vector<std::string> out;
      for (const auto& e : j) {
        if (!e.is_string()) throw fail("an array of strings");
        out.push_back(e.get<std::string>());
      }
      return out;
    }
  }
}

PipelineResult unchanged(const Image& image, const BeamDescriptor& beam) {
  return {image, beam, {}, {}};
}

constexpr std::uint64_t kNoiseKey = 1;

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string_view to_string(TransformId id) noexcept { return info(id).code; }

TransformId transform_id_from_string(std::string_view s) {
  for (const auto& i : kIds)
    if (i.code == s) return i.id;
  throw LookupError("unknown transform id '" + std::string(s) + "'");
}

std::string_view display_name(TransformId id) noexcept { return info(id).name; }

std::span<const TransformId> all_transform_ids() noexcept { return kIdList; }

// ---------------------------------------------------------------------------
// ParamSet

ParamSet ParamSet::defaults(TransformId id) {
  ParamSet p;
  switch (id) {
    case TransformId::B00:
      p.add("area", Range{0.08, 1.0});
      p.add("aspect", Range{0.75, 4.0 / 3.0});
      p.add("restrict_to_fov", false);
      break;
    case TransformId::B02:
      p.add("brightness", Range{0.6, 1.4});
      p.add("contrast", Range{0.6, 1.4});
      p.add("saturation", Range{0.8, 1.2});
      p.add("hue", Range{-0.1, 0.1});
      break;
    case TransformId::B04:
      p.add("kernel", 13LL);
      p.add("sigma", Range{0.1, 2.0});
      break;
    case TransformId::B05:
      p.add("threshold", 128LL);
      break;
    case TransformId::U00:
      p.add("rho", Range{1.0, 2.0});
      p.add("omega", Range{0.7, 0.95});
      break;
    case TransformId::U01:
      p.add("top_width_fraction", Range{0.6, 1.0});
      break;
    case TransformId::U02:
      p.add("wavelets", std::vector<std::string>{"db2", "db5"});
      p.add("alpha", Range{2.0, 4.0});
      p.add("levels", 3LL);
      p.add("coarse_level", 2LL);
      break;
    case TransformId::U03:
      p.add("clip", Range{30.0, 50.0});
      p.add("tiles", 8LL);
      p.add("tile_mode", std::string("grid"));
      break;
    case TransformId::U04:
      p.add("gamma", Range{0.5, 1.75});
      break;
    case TransformId::U05:
      p.add("brightness", Range{0.6, 1.4});
      p.add("contrast", Range{0.6, 1.4});
      break;
    case TransformId::U06:
      p.add("depth", Range{0.8, 1.25});
      break;
    case TransformId::U07:
      p.add("lateral", Range{35.0, 45.0});
      p.add("axial", Range{75.0, 85.0});
      p.add("phasors", Range{5.0, 10.0});
      break;
    case TransformId::U08:
      p.add("sigma", Range{0.5, 2.5});
      break;
    case TransformId::U09:
      p.add("salt", Range{0.001, 0.005});
      p.add("pepper", Range{0.001, 0.005});
      break;
    case TransformId::U11:
      p.add("angle", Range{-22.5, 22.5});
      p.add("shift_x", Range{-0.2, 0.2});
      p.add("shift_y", Range{-0.2, 0.2});
      break;
    case TransformId::B01:
    case TransformId::B03:
    case TransformId::U10:
      break;
  }
  return p;
}

bool ParamSet::contains(std::string_view key) const noexcept {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const ParamValue& ParamSet::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw LookupError("no parameter named '" + std::string(key) + "'");
}

void ParamSet::set(std::string_view key, ParamValue value) {
  for (auto& [k, v] : entries_) {
    if (k != key) continue;
    if (v.index() != value.index())
      throw ParameterError("parameter '" + std::string(key) + "' has a different kind");
    v = std::move(value);
    return;
  }
  throw ParameterError("unknown parameter '" + std::string(key) + "'");
}

Range ParamSet::range(std::string_view key) const { return std::get<Range>(get(key)); }
double ParamSet::number(std::string_view key) const { return std::get<double>(get(key)); }
long long ParamSet::integer(std::string_view key) const { return std::get<long long>(get(key)); }
bool ParamSet::flag(std::string_view key) const { return std::get<bool>(get(key)); }
const std::string& ParamSet::text(std::string_view key) const { return std::get<std::string>(get(key)); }
const std::vector<std::string>& ParamSet::list(std::string_view key) const {
  return std::get<std::vector<std::string>>(get(key));
}

void validate_params(TransformId id, const ParamSet& p) {
  const ParamSet ref = ParamSet::defaults(id);
  if (p.entries().size() != ref.entries().size())
    throw ParameterError(std::string(to_string(id)) + ": parameter set does not match the schema");
  for (std::size_t i = 0; i < ref.entries().size(); ++i) {
    const auto& [k, v] = p.entries()[i];
    if (k != ref.entries()[i].first || v.index() != ref.entries()[i].second.index())
      throw ParameterError(std::string(to_string(id)) + ": parameter set does not match the schema");
  }
  switch (id) {
    case TransformId::B00:
      require_range(id, p, "area", 0.0, 1.0, true);
      require_range(id, p, "aspect", 0.0, kInf, true);
      break;
    case TransformId::B02:
      require_range(id, p, "brightness", 0.0, kInf, true);
      require_range(id, p, "contrast", 0.0, kInf, true);
      require_range(id, p, "saturation", 0.0, kInf, true);
      require_range(id, p, "hue", -0.5, 0.5);
      break;
    case TransformId::B04: {
      const long long k = p.integer("kernel");
      if (k < 1 || k % 2 == 0) bad_param(id, "kernel", "must be odd and >= 1");
      require_range(id, p, "sigma", 0.0, kInf, true);
      break;
    }
    case TransformId::B05: {
      const long long t = p.integer("threshold");
      if (t < 0 || t > 256) bad_param(id, "threshold", "must lie in [0, 256]");
      break;
    }
    case TransformId::U00:
      require_range(id, p, "rho", 1.0, kInf);
      require_range(id, p, "omega", 0.0, 1.0, true);
      break;
    case TransformId::U01:
      require_range(id, p, "top_width_fraction", 0.0, 1.0, true);
      break;
    case TransformId::U02: {
      const auto& names = p.list("wavelets");
      if (names.empty()) bad_param(id, "wavelets", "must not be empty");
      for (const auto& n : names) (void)wavelet_from_string(n);
      require_range(id, p, "alpha", 1.0, kInf, true);
      const long long levels = p.integer("levels");
      const long long coarse = p.integer("coarse_level");
      if (levels < 1 || levels > 16) bad_param(id, "levels", "must lie in [1, 16]");
      if (coarse < 1 || coarse > levels) bad_param(id, "coarse_level", "must lie in [1, levels]");
      break;
    }
    case TransformId::U03: {
      require_range(id, p, "clip", 0.0, kInf, true);
      if (p.integer("tiles") < 1) bad_param(id, "tiles", "must be >= 1");
      const auto& mode = p.text("tile_mode");
      if (mode != "grid" && mode != "pixels") bad_param(id, "tile_mode", "must be grid or pixels");
      break;
    }
    case TransformId::U04:
      require_range(id, p, "gamma", 0.0, kInf, true);
      break;
    case TransformId::U05:
      require_range(id, p, "brightness", 0.0, kInf, true);
      require_range(id, p, "contrast", 0.0, kInf, true);
      break;
    case TransformId::U06:
      require_range(id, p, "depth", 0.0, kInf, true);
      break;
    case TransformId::U07:
      require_integral(id, p, "lateral", 2.0);
      require_integral(id, p, "axial", 2.0);
      require_integral(id, p, "phasors", 1.0);
      break;
    case TransformId::U08:
      require_range(id, p, "sigma", 0.0, kInf);
      break;
    case TransformId::U09:
      require_range(id, p, "salt", 0.0, 0.5);
      require_range(id, p, "pepper", 0.0, 0.5);
      break;
    case TransformId::U11:
      require_range(id, p, "angle", -180.0, 180.0);
      require_range(id, p, "shift_x", -1.0, 1.0);
      require_range(id, p, "shift_y", -1.0, 1.0);
      break;
    case TransformId::B01:
    case TransformId::B03:
    case TransformId::U10:
      break;
  }
}

TransformSpec::TransformSpec(TransformId i, double p) : id(i), probability(p), params(ParamSet::defaults(i)) {}
TransformSpec::TransformSpec(TransformId i, double p, ParamSet ps) : id(i), probability(p), params(std::move(ps)) {}

void PipelineConfig::validate() const {
  if (views_per_image < 1) throw ParameterError("views_per_image must be >= 1");
  for (const auto& t : transforms) {
    if (!(t.probability >= 0.0 && t.probability <= 1.0))
      throw ParameterError(std::string(to_string(t.id)) + ": probability must lie in [0, 1]");
    validate_params(t.id, t.params);
  }
}

// ---------------------------------------------------------------------------
// Presets

PipelineConfig preset(std::string_view name) {
  using T = TransformId;
  const std::string key = lowered_compact(name);
  PipelineConfig cfg;
  auto add = [&](T id, double p) { cfg.transforms.emplace_back(id, p); };
  if (key == "byol") {
    cfg.name = "BYOL";
    add(T::B00, 1.0);
    add(T::B01, 0.5);
    add(T::B02, 0.8);
    add(T::B03, 0.2);
    add(T::B04, 0.5);
    add(T::B05, 0.1);
  } else if (key == "auguso") {
    cfg.name = "AugUS-O";
    add(T::U00, 0.3);
    add(T::U01, 0.75);
    add(T::U02, 0.5);
    add(T::U03, 0.2);
    add(T::U04, 0.5);
    add(T::U05, 0.5);
    add(T::U06, 0.5);
    add(T::U07, 0.333);
    add(T::U08, 0.333);
    add(T::U09, 0.1);
    add(T::U10, 0.5);
    add(T::U11, 0.5);
  } else if (key == "augusd") {
    // Each transform keeps the probability it has in its source pipeline.
    cfg.name = "AugUS-D";
    add(T::U03, 0.2);
    add(T::B02, 0.8);
    add(T::U11, 0.5);
    add(T::B00, 1.0);
  } else if (key == "croponly") {
    cfg.name = "CropOnly";
    add(T::B00, 1.0);
  } else {
    throw LookupError("unknown pipeline preset '" + std::string(name) +
                      "' (expected BYOL, AugUS-O, AugUS-D or CropOnly)");
  }
  return cfg;
}

std::vector<std::string> preset_names() { return {"BYOL", "AugUS-O", "AugUS-D", "CropOnly"}; }

// ---------------------------------------------------------------------------
// Application

std::uint64_t transform_stream_key(TransformId id, int occurrence) noexcept {
  return (static_cast<std::uint64_t>(id) + 1) << 32 | static_cast<std::uint32_t>(occurrence);
}

PipelineResult apply_transform(const TransformSpec& spec, const Image& image,
                               const BeamDescriptor& beam, RngStream& stream, bool included) {
  using T = TransformId;
  const ParamSet& p = spec.params;
  const int h = image.height();
  const int w = image.width();
  auto noise_stream = [&] { return stream.derive(kNoiseKey); };

  switch (spec.id) {
    case T::B00: {
      CropParams cp;
      cp.min_area_c = p.range("area").lo;
      cp.max_area = p.range("area").hi;
      cp.aspect_lo = p.range("aspect").lo;
      cp.aspect_hi = p.range("aspect").hi;
      cp.restrict_to_fov = included && p.flag("restrict_to_fov");
      std::optional<FovMask> fov;
      if (cp.restrict_to_fov) fov = build_fov_mask(beam, h, w);
      const CropWindow win = sample_crop_window(h, w, cp, stream, fov ? &*fov : nullptr);
      if (!included) break;
      return {crop_resize_window(image, win), crop_resize_beam(beam, h, w, win), {}, {}};
    }
    case T::B01:
    case T::U10:
      if (!included) break;
      return {hflip(image), mirrored(beam, w), {}, {}};
    case T::B02: {
      const double b = draw(stream, p.range("brightness"));
      const double k = draw(stream, p.range("contrast"));
      const double s = draw(stream, p.range("saturation"));
      const double hue = draw(stream, p.range("hue"));
      if (!included) break;
      return {color_jitter(image, b, k, s, hue), beam, {}, {}};
    }
    case T::B03:
      if (!included) break;
      return {to_grayscale(image), beam, {}, {}};
    case T::B04: {
      const double sigma = draw(stream, p.range("sigma"));
      if (!included) break;
      return {gaussian_blur(image, static_cast<int>(p.integer("kernel")), sigma), beam, {}, {}};
    }
    case T::B05:
      if (!included) break;
      return {solarize(image, static_cast<int>(p.integer("threshold"))), beam, {}, {}};
    case T::U00: {
      const double rho = draw(stream, p.range("rho"));
      const double omega = draw(stream, p.range("omega"));
      if (!included) break;
      BeamImage out = probe_type_change(image, beam, rho, omega);
      return {std::move(out.image), std::move(out.beam), {}, {}};
    }
    case T::U01: {
      const double f = draw(stream, p.range("top_width_fraction"));
      if (!included || !beam.is_convex()) break;
      // f is the new top width relative to the current one.
      const double top = beam.p2.x - beam.p1.x;
      const double bottom = beam.p4.x - beam.p3.x;
      if (!(top > 0.0)) throw GeometryError("beam top has zero width");
      BeamImage out = convexity_change(image, beam, f * top / bottom);
      return {std::move(out.image), std::move(out.beam), {}, {}};
    }
    case T::U02: {
      const auto& names = p.list("wavelets");
      const int pick = stream.uniform_int(0, static_cast<int>(names.size()) - 1);
      WaveletParams wp;
      wp.wavelet = wavelet_from_string(names[pick]);
      wp.alpha = draw(stream, p.range("alpha"));
      wp.levels = static_cast<int>(p.integer("levels"));
      wp.coarse_level = static_cast<int>(p.integer("coarse_level"));
      if (!included) break;
      // Smoothing spreads intensity across the beam edge, so the result is re-masked.
      return {apply_mask(wavelet_denoise(image, wp), build_fov_mask(beam, h, w)), beam, {}, {}};
    }
    case T::U03: {
      const double clip = draw(stream, p.range("clip"));
      if (!included) break;
      const ClaheTileMode mode = p.text("tile_mode") == "pixels" ? ClaheTileMode::pixels : ClaheTileMode::grid;
      return {clahe(image, clip, static_cast<int>(p.integer("tiles")), build_fov_mask(beam, h, w), mode),
              beam, {}, {}};
    }
    case T::U04: {
      const double g = draw(stream, p.range("gamma"));
      if (!included) break;
      return {gamma_correct(image, g), beam, {}, {}};
    }
    case T::U05: {
      const double b = draw(stream, p.range("brightness"));
      const double k = draw(stream, p.range("contrast"));
      if (!included) break;
      return {brightness_contrast(image, b, k, build_fov_mask(beam, h, w)), beam, {}, {}};
    }
    case T::U06: {
      const double d = draw(stream, p.range("depth"));
      if (!included) break;
      return {depth_change(image, beam, d), beam, {}, {}};
    }
    case T::U07: {
      SpeckleParams sp;
      sp.lateral_resolution = draw_int(stream, p.range("lateral"));
      sp.axial_resolution = draw_int(stream, p.range("axial"));
      sp.num_phasors = draw_int(stream, p.range("phasors"));
      if (!included) break;
      RngStream ns = noise_stream();
      return {speckle(image, beam, sp, ns), beam, {}, {}};
    }
    case T::U08: {
      const double sigma = draw(stream, p.range("sigma"));
      if (!included) break;
      RngStream ns = noise_stream();
      return {gaussian_noise(image, sigma, ns), beam, {}, {}};
    }
    case T::U09: {
      const double salt = draw(stream, p.range("salt"));
      const double pepper = draw(stream, p.range("pepper"));
      if (!included) break;
      RngStream ns = noise_stream();
      return {salt_pepper(image, salt, pepper, ns), beam, {}, {}};
    }
    case T::U11: {
      AffineParams ap;
      ap.angle_deg = draw(stream, p.range("angle"));
      ap.shift_x_frac = draw(stream, p.range("shift_x"));
      ap.shift_y_frac = draw(stream, p.range("shift_y"));
      if (!included) break;
      return {rotate_shift(image, ap), beam, {}, {}};
    }
  }
  return unchanged(image, beam);
}

PipelineResult apply_pipeline(const PipelineConfig& config, const Image& image,
                              const BeamDescriptor& beam, const RngStream& stream) {
  config.validate();
  PipelineResult state = unchanged(image, beam);
  std::array<int, kTransformCount> seen{};
  for (const auto& spec : config.transforms) {
    const int occurrence = seen[static_cast<std::size_t>(spec.id)]++;
    RngStream sub = stream.derive(transform_stream_key(spec.id, occurrence));
    const bool included = sub.bernoulli(spec.probability);
    try {
      PipelineResult next = apply_transform(spec, state.image, state.beam, sub, included);
      state.image = std::move(next.image);
      state.beam = std::move(next.beam);
      if (included) state.applied.push_back(spec.id);
    } catch (const GeometryError& e) {
      state.warnings.push_back(std::string(to_string(spec.id)) + " skipped: " + e.what());
    }
  }
  return state;
}

std::vector<PipelineResult> make_views(const PipelineConfig& config, const Image& image,
                                       const BeamDescriptor& beam, std::int64_t image_id) {
  config.validate();
  std::vector<PipelineResult> views;
  views.reserve(static_cast<std::size_t>(config.views_per_image));
  for (int v = 0; v < config.views_per_image; ++v)
    views.push_back(apply_pipeline(config, image, beam, RngStream(config.master_seed, image_id, v)));
  return views;
}

std::pair<PipelineResult, PipelineResult> make_positive_pair(const PipelineConfig& config,
                                                             const Image& image,
                                                             const BeamDescriptor& beam,
                                                             std::int64_t image_id) {
  return {apply_pipeline(config, image, beam, RngStream(config.master_seed, image_id, 0)),
          apply_pipeline(config, image, beam, RngStream(config.master_seed, image_id, 1))};
}

// ---------------------------------------------------------------------------
// Serialization

std::string config_to_json(const PipelineConfig& config) {
  json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  doc["name"] = config.name;
  doc["seed"] = config.master_seed;
  doc["views_per_image"] = config.views_per_image;
  json list = json::array();
  for (const auto& t : config.transforms) {
    json params = json::object();
    for (const auto& [k, v] : t.params.entries()) params[k] = value_to_json(v);
    list.push_back({{"id", std::string(to_string(t.id))}, {"p", t.probability}, {"params", params}});
  }
  doc["transforms"] = std::move(list);
  return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("pipeline config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("pipeline config must be a JSON object");
  for (const auto& [k, v] : doc.items()) {
    if (k != "schema_version" && k != "name" && k != "seed" && k != "views_per_image" && k != "transforms")
      throw ParameterError("unknown key '" + k + "' in pipeline config");
  }
  if (doc.contains("schema_version") &&
      (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kConfigSchemaVersion))
    throw ParameterError("unsupported pipeline config schema_version");
  PipelineConfig cfg;
  if (!doc.contains("name") || !doc["name"].is_string()) throw ParameterError("pipeline config needs a string 'name'");
  cfg.name = doc["name"].get<std::string>();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) throw ParameterError("'seed' must be an integer");
    cfg.master_seed = doc["seed"].is_number_unsigned() ? doc["seed"].get<std::uint64_t>()
                                                       : static_cast<std::uint64_t>(doc["seed"].get<std::int64_t>());
  }
  if (doc.contains("views_per_image")) {
    if (!doc["views_per_image"].is_number_integer()) throw ParameterError("'views_per_image' must be an integer");
    cfg.views_per_image = doc["views_per_image"].get<int>();
  }
  if (!doc.contains("transforms") || !doc["transforms"].is_array())
    throw ParameterError("pipeline config needs a 'transforms' array");
  for (const auto& t : doc["transforms"]) {
    if (!t.is_object()) throw ParameterError("each transform must be a JSON object");
    for (const auto& [k, v] : t.items())
      if (k != "id" && k != "p" && k != "params") throw ParameterError("unknown key '" + k + "' in transform");
    if (!t.contains("id") || !t["id"].is_string()) throw ParameterError("transform needs a string 'id'");
    const TransformId id = transform_id_from_string(t["id"].get<std::string>());
    if (!t.contains("p") || !t["p"].is_number()) throw ParameterError("transform needs a numeric 'p'");
    TransformSpec spec(id, t["p"].get<double>());
    if (t.contains("params")) {
      if (!t["params"].is_object()) throw ParameterError("'params' must be an object");
      for (const auto& [k, v] : t["params"].items()) {
        if (!spec.params.contains(k))
          throw ParameterError("unknown parameter '" + k + "' for " + std::string(to_string(id)));
        spec.params.set(k, value_from_json(spec.params.get(k), v, k));
      }
    }
    cfg.transforms.push_back(std::move(spec));
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline(std::string_view name_or_path) {
  try {
    return preset(name_or_path);
  } catch (const LookupError&) {
  }
  std::ifstream in{std::string(name_or_path)};
  if (!in)
    throw LookupError("'" + std::string(name_or_path) + "' is neither a preset nor a readable config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string render_config(const PipelineConfig& config) {
  auto pad = [](std::string s, std::size_t n) {
    if (s.size() < n) s.append(n - s.size(), ' ');
    return s;
  };
  std::ostringstream out;
  out << "pipeline: " << config.name << "\n";
  out << "seed: " << config.master_seed << "\n";
  out << "views_per_image: " << config.views_per_image << "\n";
  out << "transforms: " << config.transforms.size() << "\n";
  out << pad("id", 5) << pad("p", 7) << pad("transform", 32) << "parameters\n";
  for (const auto& t : config.transforms) {
    std::string params;
    for (const auto& [k, v] : t.params.entries()) {
      if (!params.empty()) params += ' ';
      params += k + "=" + format_value(v);
    }
    if (params.empty()) params = "-";
    out << pad(std::string(to_string(t.id)), 5) << pad(format_probability(t.probability), 7)
        << pad(std::string(display_name(t.id)), 32) << params << "\n";
  }
  return out.str();
}

}  // namespace usaug
