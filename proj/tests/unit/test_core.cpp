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

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "fixtures.hpp"
#include "usaug/beam.hpp"
#include "usaug/errors.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug {
namespace {

TEST(Image, RejectsInvalidShapes) {
  EXPECT_THROW(Image(1, 5, 1), ShapeError);
  EXPECT_THROW(Image(5, 1, 1), ShapeError);
  EXPECT_THROW(Image(4, 4, 2), ShapeError);
  EXPECT_THROW(Image(4, 4, 3, std::vector<std::uint8_t>(47)), ShapeError);
  EXPECT_NO_THROW(Image(2, 2, 3, std::vector<std::uint8_t>(12)));
}

TEST(Image, LayoutIsRowMajorInterleaved) {
  Image img(2, 3, 3);
  img.at(1, 2, 1) = 9;
  EXPECT_EQ(img.data()[(1 * 3 + 2) * 3 + 1], 9);
  EXPECT_EQ(img.size(), 18u);
  EXPECT_EQ(img.pixel_count(), 6u);
}

TEST(Image, SaturatingConversion) {
  EXPECT_EQ(saturate_u8(std::numeric_limits<double>::quiet_NaN()), 0);
  EXPECT_EQ(saturate_u8(-3.0), 0);
  EXPECT_EQ(saturate_u8(300.0), 255);
  EXPECT_EQ(saturate_u8(127.5), 128);
  EXPECT_EQ(saturate_u8(127.49), 127);
}

TEST(Beam, ConvexFactoryDerivesApex) {
  const auto b = testing::curvilinear_128();
  ASSERT_TRUE(b.p0 && b.theta0);
  EXPECT_NEAR(b.p0->x, 64.0, 1e-9);
  EXPECT_NEAR(b.p0->y, -40.0, 1e-9);
  EXPECT_NEAR(*b.theta0, 50.0 * std::numbers::pi / 180.0, 1e-9);
  EXPECT_NEAR(b.top_radius(), 60.0, 1e-9);
  EXPECT_NEAR(b.bottom_radius(), 140.0, 1e-9);
}

TEST(Beam, ValidationRejectsBrokenDescriptors) {
  EXPECT_THROW(BeamDescriptor::linear({0, 0}, {10, 1}, {0, 10}, {10, 10}), GeometryError);
  EXPECT_THROW(BeamDescriptor::linear({10, 0}, {0, 0}, {0, 10}, {10, 10}), GeometryError);
  EXPECT_THROW(BeamDescriptor::linear({0, 10}, {10, 10}, {0, 0}, {10, 0}), GeometryError);
  auto lin = testing::linear_128();
  lin.p0 = Point2{64, -10};
  EXPECT_THROW(lin.validate(), GeometryError);
  auto convex = testing::curvilinear_128();
  convex.p0 = Point2{64, -30};
  EXPECT_THROW(convex.validate(), GeometryError);
  convex = testing::curvilinear_128();
  convex.theta0 = -0.1;
  EXPECT_THROW(convex.validate(), GeometryError);
}

TEST(Beam, ProbeTypeNames) {
  EXPECT_EQ(probe_type_from_string("linear"), ProbeType::linear);
  EXPECT_EQ(probe_type_from_string("curvilinear"), ProbeType::curvilinear);
  EXPECT_EQ(probe_type_from_string("phased"), ProbeType::phased_array);
  EXPECT_EQ(to_string(ProbeType::phased_array), "phased");
  EXPECT_THROW(probe_type_from_string("sector"), LookupError);
}

TEST(Beam, MirrorIsAnInvolution) {
  const auto b = testing::curvilinear_128();
  const auto m = mirrored(b, 128);
  EXPECT_DOUBLE_EQ(m.p1.x, 127.0 - b.p2.x);
  EXPECT_NO_THROW(m.validate());
  const auto back = mirrored(m, 128);
  const Point2 got[] = {back.p1, back.p2, back.p3, back.p4, *back.p0};
  const Point2 want[] = {b.p1, b.p2, b.p3, b.p4, *b.p0};
  for (int i = 0; i < 5; ++i) EXPECT_LT(distance(got[i], want[i]), 1e-12) << i;
  EXPECT_EQ(back.probe_type, b.probe_type);
}

TEST(Beam, TranslateAndResize) {
  const auto b = testing::linear_128();
  const auto t = translated(b, -16, -8);
  EXPECT_EQ(t.p1, (Point2{0, 0}));
  EXPECT_EQ(resized(b, 128, 128, 128, 128), b);
  const auto r = resized(b, 128, 128, 64, 64);
  EXPECT_DOUBLE_EQ(r.p1.x, (16 + 0.5) * 0.5 - 0.5);
}

TEST(Rng, SameKeyGivesSameSequence) {
  RngStream a = make_rng_stream(42, 0, 0);
  RngStream b = make_rng_stream(42, 0, 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, ViewIdChangesSequence) {
  RngStream a = make_rng_stream(42, 0, 0);
  RngStream b = make_rng_stream(42, 0, 1);
  int differing = 0;
  for (int i = 0; i < 100; ++i) differing += a.uniform() != b.uniform();
  EXPECT_GE(differing, 1);
}

TEST(Rng, UniformStaysInHalfOpenUnitInterval) {
  RngStream s = make_rng_stream(42, 7, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, SampleUniformBounds) {
  RngStream s = make_rng_stream(1, 2, 3);
  EXPECT_EQ(sample_uniform(s, 3.0, 3.0), 3.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = sample_uniform(s, 0.08, 1.0);
    ASSERT_GE(v, 0.08);
    ASSERT_LT(v, 1.0);
  }
  EXPECT_THROW(sample_uniform(s, 1.0, 0.0), ParameterError);
}

TEST(Rng, UniformMeanAndChiSquare) {
  RngStream s = make_rng_stream(9, 0, 0);
  constexpr int n = 100000;
  std::array<int, 16> bins{};
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = sample_uniform(s, 0.0, 1.0);
    sum += u;
    ++bins[static_cast<int>(u * 16)];
  }
  EXPECT_NEAR(sum / n, 0.5, 0.01);
  double chi2 = 0.0;
  const double expected = n / 16.0;
  for (int b : bins) chi2 += (b - expected) * (b - expected) / expected;
  // Upper 1% point of chi-square with 15 degrees of freedom.
  EXPECT_LT(chi2, 30.578);
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  RngStream s = make_rng_stream(5, 5, 5);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    const int v = s.uniform_int(35, 45);
    ASSERT_GE(v, 35);
    ASSERT_LE(v, 45);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 11u);
  EXPECT_EQ(s.uniform_int(7, 7), 7);
}

TEST(Rng, BernoulliEdges) {
  RngStream s = make_rng_stream(3, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(s.bernoulli(0.0));
    ASSERT_TRUE(s.bernoulli(1.0));
  }
}

TEST(Rng, NormalMoments) {
  RngStream s = make_rng_stream(11, 0, 0);
  constexpr int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    const auto [a, b] = s.normal_pair();
    sum += a + b;
    sq += a * a + b * b;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 1.0, 0.01);
}

TEST(Rng, DerivedStreamsAreIndependentOfParentPosition) {
  RngStream a = make_rng_stream(1, 1, 1);
  RngStream b = make_rng_stream(1, 1, 1);
  (void)b.uniform();
  RngStream da = a.derive(77);
  RngStream db = b.derive(77);
  EXPECT_EQ(da.next_u64(), db.next_u64());
  RngStream other = a.derive(78);
  EXPECT_NE(a.derive(77).next_u64(), other.next_u64());
}

TEST(Rng, DrawCounterCounts) {
  RngStream s = make_rng_stream(0, 0, 0);
  EXPECT_EQ(s.draw_counter(), 0u);
  (void)s.uniform();
  (void)s.uniform_int(0, 3);
  EXPECT_EQ(s.draw_counter(), 2u);
}

}  // namespace
}  // namespace usaug
