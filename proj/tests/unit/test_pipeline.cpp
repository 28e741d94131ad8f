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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "fixtures.hpp"
#include "usaug/errors.hpp"
#include "usaug/fov.hpp"
#include "usaug/geometry.hpp"
#include "usaug/pipeline.hpp"

namespace usaug {
namespace {

using T = TransformId;

struct Scan {
  Image image;
  BeamDescriptor beam;
};

// A preprocessed curvilinear scan shrunk to 48x48 so that many pipeline runs stay cheap.
Scan small_scan(int channels = 1) {
  const auto pre = preprocess(testing::textured_image(128, 128, channels, 17), testing::curvilinear_128());
  const int h = pre.image.height(), w = pre.image.width();
  BeamDescriptor beam = resized(pre.beam, h, w, 48, 48);
  Image img = apply_mask(resize_bilinear(pre.image, 48, 48), build_fov_mask(beam, 48, 48));
  return {std::move(img), std::move(beam)};
}

Scan full_scan(int channels = 1) {
  auto pre = preprocess(testing::textured_image(128, 128, channels, 17), testing::curvilinear_128());
  return {std::move(pre.image), std::move(pre.beam)};
}

std::vector<std::pair<T, double>> layout(const PipelineConfig& c) {
  std::vector<std::pair<T, double>> out;
  for (const auto& t : c.transforms) out.emplace_back(t.id, t.probability);
  return out;
}

TEST(Presets, Layouts) {
  using V = std::vector<std::pair<T, double>>;
  EXPECT_EQ(layout(preset("BYOL")),
            (V{{T::B00, 1.0}, {T::B01, 0.5}, {T::B02, 0.8}, {T::B03, 0.2}, {T::B04, 0.5}, {T::B05, 0.1}}));
  EXPECT_EQ(layout(preset("AugUS-O")),
            (V{{T::U00, 0.3}, {T::U01, 0.75}, {T::U02, 0.5}, {T::U03, 0.2}, {T::U04, 0.5}, {T::U05, 0.5},
               {T::U06, 0.5}, {T::U07, 0.333}, {T::U08, 0.333}, {T::U09, 0.1}, {T::U10, 0.5}, {T::U11, 0.5}}));
  EXPECT_EQ(layout(preset("AugUS-D")), (V{{T::U03, 0.2}, {T::B02, 0.8}, {T::U11, 0.5}, {T::B00, 1.0}}));
  EXPECT_EQ(layout(preset("CropOnly")), (V{{T::B00, 1.0}}));
}

TEST(Presets, NameMatchingIsLenient) {
  EXPECT_EQ(preset("augus_o"), preset("AugUS-O"));
  EXPECT_EQ(preset("AUGUSO"), preset("AugUS-O"));
  EXPECT_EQ(preset("crop-only"), preset("CropOnly"));
  EXPECT_EQ(preset("byol").name, "BYOL");
  EXPECT_THROW(preset("simclr"), LookupError);
  EXPECT_EQ(preset_names().size(), 4u);
}

TEST(Presets, DefaultsMatchParameterBounds) {
  const auto b = preset("BYOL");
  EXPECT_EQ(b.transforms[0].params.range("area"), (Range{0.08, 1.0}));
  EXPECT_EQ(b.transforms[4].params.integer("kernel"), 13);
  EXPECT_EQ(b.transforms[5].params.integer("threshold"), 128);
  const auto o = preset("AugUS-O");
  EXPECT_EQ(o.transforms[0].params.range("rho"), (Range{1.0, 2.0}));
  EXPECT_EQ(o.transforms[2].params.list("wavelets"), (std::vector<std::string>{"db2", "db5"}));
  EXPECT_EQ(o.transforms[4].params.range("gamma"), (Range{0.5, 1.75}));
  EXPECT_EQ(o.transforms[11].params.range("angle"), (Range{-22.5, 22.5}));
  for (const auto& name : preset_names()) EXPECT_NO_THROW(preset(name).validate());
}

TEST(TransformIds, NamesRoundTrip) {
  ASSERT_EQ(all_transform_ids().size(), static_cast<std::size_t>(kTransformCount));
  for (T id : all_transform_ids()) EXPECT_EQ(transform_id_from_string(to_string(id)), id);
  EXPECT_EQ(display_name(T::U09), "Salt & pepper noise");
  EXPECT_THROW(transform_id_from_string("U12"), LookupError);
}

TEST(ParamSetTest, SetChecksKeyAndKind) {
  ParamSet p = ParamSet::defaults(T::U04);
  p.set("gamma", Range{0.8, 1.2});
  EXPECT_EQ(p.range("gamma"), (Range{0.8, 1.2}));
  EXPECT_THROW(p.set("gamma", 1.0), ParameterError);
  EXPECT_THROW(p.set("gain", Range{1, 2}), ParameterError);
  EXPECT_THROW(p.get("gain"), LookupError);
}

TEST(ParamSetTest, ValidationRejectsOutOfDomainValues) {
  auto bad = [](T id, const char* key, ParamValue v) {
    ParamSet p = ParamSet::defaults(id);
    p.set(key, std::move(v));
    return p;
  };
  EXPECT_THROW(validate_params(T::U04, bad(T::U04, "gamma", Range{0.0, 1.0})), ParameterError);
  EXPECT_THROW(validate_params(T::B00, bad(T::B00, "area", Range{0.5, 0.2})), ParameterError);
  EXPECT_THROW(validate_params(T::B04, bad(T::B04, "kernel", 12LL)), ParameterError);
  EXPECT_THROW(validate_params(T::B05, bad(T::B05, "threshold", 300LL)), ParameterError);
  EXPECT_THROW(validate_params(T::U00, bad(T::U00, "rho", Range{0.5, 2.0})), ParameterError);
  EXPECT_THROW(validate_params(T::U02, bad(T::U02, "wavelets", std::vector<std::string>{"haar"})), std::exception);
  EXPECT_THROW(validate_params(T::U03, bad(T::U03, "tile_mode", std::string("hex"))), ParameterError);
  for (T id : all_transform_ids()) EXPECT_NO_THROW(validate_params(id, ParamSet::defaults(id)));
  PipelineConfig c = preset("BYOL");
  c.transforms[1].probability = 1.5;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(TransformDraws, CountsDoNotDependOnInclusion) {
  const Scan s = full_scan(3);
  const std::map<T, std::uint64_t> expected{
      {T::B00, 4}, {T::B01, 0}, {T::B02, 4}, {T::B03, 0}, {T::B04, 1}, {T::B05, 0}, {T::U00, 2}, {T::U01, 1}, {T::U02, 2},
      {T::U03, 1}, {T::U04, 1}, {T::U05, 2}, {T::U06, 1}, {T::U07, 3}, {T::U08, 1}, {T::U09, 2}, {T::U10, 0}, {T::U11, 3}};
  for (T id : all_transform_ids()) {
    const TransformSpec spec(id, 1.0);
    RngStream a(3, 0, 0), b(3, 0, 0);
    const auto on = apply_transform(spec, s.image, s.beam, a, true);
    const auto off = apply_transform(spec, s.image, s.beam, b, false);
    EXPECT_EQ(a.draw_counter(), expected.at(id)) << to_string(id);
    EXPECT_EQ(b.draw_counter(), expected.at(id)) << to_string(id);
    EXPECT_EQ(off.image, s.image) << to_string(id);
    EXPECT_EQ(off.beam, s.beam) << to_string(id);
  }
}

TEST(Pipeline, ZeroProbabilityIsIdentity) {
  const Scan s = full_scan(3);
  for (const auto& name : preset_names()) {
    PipelineConfig c = preset(name);
    for (auto& t : c.transforms) t.probability = 0.0;
    const auto out = apply_pipeline(c, s.image, s.beam, RngStream(1, 2, 3));
    EXPECT_EQ(out.image, s.image) << name;
    EXPECT_EQ(out.beam, s.beam) << name;
    EXPECT_TRUE(out.applied.empty());
  }
}

TEST(Pipeline, ReplayIsDeterministic) {
  const Scan s = full_scan(3);
  const auto c = preset("AugUS-O");
  const auto a = apply_pipeline(c, s.image, s.beam, RngStream(8, 1, 0));
  const auto b = apply_pipeline(c, s.image, s.beam, RngStream(8, 1, 0));
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.beam, b.beam);
  EXPECT_EQ(a.applied, b.applied);
}

TEST(Pipeline, InclusionRatesMatchProbabilities) {
  const Scan s = small_scan();
  const auto c = preset("AugUS-O");
  constexpr int runs = 2000;
  std::map<T, int> hits;
  for (int i = 0; i < runs; ++i) {
    const auto out = apply_pipeline(c, s.image, s.beam, RngStream(99, i, 0));
    for (T id : out.applied) ++hits[id];
    for (const auto& w : out.warnings)
      for (const auto& t : c.transforms)
        if (w.rfind(std::string(to_string(t.id)) + " ", 0) == 0) ++hits[t.id];
  }
  for (const auto& t : c.transforms) {
    const double p = t.probability;
    const double sd = std::sqrt(runs * p * (1 - p));
    EXPECT_LE(std::abs(hits[t.id] - runs * p), 4 * sd) << to_string(t.id) << " " << hits[t.id];
  }
}

TEST(Pipeline, RemovingATransformDoesNotShiftTheOthers) {
  const Scan s = small_scan();
  const auto full = preset("AugUS-O");
  PipelineConfig ablated = full;
  ablated.transforms.erase(ablated.transforms.begin() + 2);  // U02
  for (int i = 0; i < 100; ++i) {
    auto a = apply_pipeline(full, s.image, s.beam, RngStream(4, i, 0)).applied;
    const auto b = apply_pipeline(ablated, s.image, s.beam, RngStream(4, i, 0)).applied;
    std::erase(a, T::U02);
    // Geometry skips are not listed, so compare inclusion of the photometric part only.
    auto photometric = [](std::vector<T> v) {
      std::erase_if(v, [](T id) { return id == T::U00 || id == T::U01 || id == T::U06; });
      return v;
    };
    ASSERT_EQ(photometric(a), photometric(b)) << "image " << i;
  }
}

TEST(Pipeline, RepeatedTransformsUseSeparateStreams) {
  EXPECT_NE(transform_stream_key(T::U10, 0), transform_stream_key(T::U10, 1));
  EXPECT_NE(transform_stream_key(T::U10, 0), transform_stream_key(T::B01, 0));
  const Scan s = small_scan();
  PipelineConfig c;
  c.name = "twice";
  c.transforms = {TransformSpec(T::U10, 0.5), TransformSpec(T::U10, 0.5)};
  int disagree = 0;
  for (int i = 0; i < 200; ++i) disagree += apply_pipeline(c, s.image, s.beam, RngStream(1, i, 0)).applied.size() == 1;
  EXPECT_GT(disagree, 50);
}

TEST(Pipeline, UltrasoundPipelineKeepsOutsideBlack) {
  // Salt & pepper and rotation are allowed to place intensity outside the beam.
  PipelineConfig c = preset("AugUS-O");
  std::erase_if(c.transforms, [](const TransformSpec& t) { return t.id == T::U09 || t.id == T::U11; });
  for (auto& t : c.transforms) t.probability = std::max(t.probability, 0.5);
  for (const Scan& s : {full_scan(1), full_scan(3)}) {
    for (int i = 0; i < 30; ++i) {
      const auto out = apply_pipeline(c, s.image, s.beam, RngStream(6, i, 0));
      const FovMask m = build_fov_mask(out.beam, out.image.height(), out.image.width());
      ASSERT_TRUE(testing::zero_outside(out.image, m)) << "run " << i;
    }
  }
}

TEST(Pipeline, PositiveViewsDiffer) {
  const Scan s = full_scan(3);
  const auto c = preset("BYOL");
  int differ = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = make_positive_pair(c, s.image, s.beam, i);
    differ += a.image != b.image;
  }
  EXPECT_GE(differ, 99);
  PipelineConfig three = c;
  three.views_per_image = 3;
  EXPECT_EQ(make_views(three, s.image, s.beam, 0).size(), 3u);
  const auto pair = make_positive_pair(c, s.image, s.beam, 5);
  const auto views = make_views(c, s.image, s.beam, 5);
  EXPECT_EQ(pair.first.image, views[0].image);
  EXPECT_EQ(pair.second.image, views[1].image);
}

TEST(ConfigJson, RoundTripsEveryPreset) {
  for (const auto& name : preset_names()) {
    PipelineConfig c = preset(name);
    c.master_seed = 12345678901234ULL;
    c.views_per_image = 4;
    EXPECT_EQ(config_from_json(config_to_json(c)), c) << name;
  }
  for (double area : {0.05, 0.08, 0.3, 0.9}) {
    PipelineConfig c = preset("CropOnly");
    c.transforms[0].params.set("area", Range{area, 1.0});
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.transforms[0].params.range("area").lo, area);
  }
}

TEST(ConfigJson, OverridesMergeOntoDefaults) {
  const auto c = config_from_json(R"({"name": "mini", "seed": 3,
      "transforms": [{"id": "U04", "p": 0.25, "params": {"gamma": [0.9, 1.1]}}, {"id": "U10", "p": 1}]})");
  EXPECT_EQ(c.name, "mini");
  EXPECT_EQ(c.master_seed, 3u);
  ASSERT_EQ(c.transforms.size(), 2u);
  EXPECT_EQ(c.transforms[0].params.range("gamma"), (Range{0.9, 1.1}));
  EXPECT_DOUBLE_EQ(c.transforms[0].probability, 0.25);
  EXPECT_EQ(c.transforms[1].params, ParamSet::defaults(T::U10));
}

TEST(ConfigJson, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json(R"({"name": "x", "transforms": [], "extra": 1})"), ParameterError);
  EXPECT_THROW(config_from_json(R"({"name": "x", "transforms": [{"id": "U04", "p": 1, "q": 2}]})"), ParameterError);
  EXPECT_THROW(config_from_json(R"({"name": "x", "transforms": [{"id": "U04", "p": 1, "params": {"gain": 2}}]})"),
               ParameterError);
  EXPECT_THROW(config_from_json(R"({"name": "x", "transforms": [{"id": "U04", "p": 2}]})"), ParameterError);
  EXPECT_THROW(config_from_json(R"({"name": "x", "transforms": [{"id": "Z99", "p": 1}]})"), LookupError);
  EXPECT_THROW(config_from_json("not json"), ParameterError);
}

TEST(Render, NumberFormatting) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.08), "0.08");
  EXPECT_EQ(format_number(4.0 / 3.0), "1.3333333333333333");
  EXPECT_EQ(format_number(-22.5), "-22.5");
}

TEST(Render, TableHasOneRowPerTransform) {
  const std::string text = render_config(preset("AugUS-D"));
  EXPECT_NE(text.find("pipeline: AugUS-D\n"), std::string::npos);
  const auto u03 = text.find("U03  0.2"), b02 = text.find("B02  0.8"), u11 = text.find("U11  0.5"),
             b00 = text.find("B00  1.0");
  ASSERT_NE(u03, std::string::npos);
  EXPECT_LT(u03, b02);
  EXPECT_LT(b02, u11);
  EXPECT_LT(u11, b00);
}

}  // namespace
}  // namespace usaug
