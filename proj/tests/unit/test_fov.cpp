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
#include <numeric>
#include <queue>

#include "fixtures.hpp"
#include "usaug/errors.hpp"
#include "usaug/fov.hpp"

namespace usaug {
namespace {

using testing::curvilinear_128;
using testing::full_frame_linear;
using testing::phased_128;

// 4-connected component count of the true region.
int components(const FovMask& m) {
  std::vector<int> seen(std::size_t(m.height()) * m.width(), 0);
  int count = 0;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) {
      if (!m.at(r, c) || seen[std::size_t(r) * m.width() + c]) continue;
      ++count;
      std::queue<std::pair<int, int>> q;
      q.push({r, c});
      seen[std::size_t(r) * m.width() + c] = 1;
      while (!q.empty()) {
        auto [y, x] = q.front();
        q.pop();
        const int dy[] = {1, -1, 0, 0};
        const int dx[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int ny = y + dy[k], nx = x + dx[k];
          if (ny < 0 || nx < 0 || ny >= m.height() || nx >= m.width()) continue;
          auto& s = seen[std::size_t(ny) * m.width() + nx];
          if (s || !m.at(ny, nx)) continue;
          s = 1;
          q.push({ny, nx});
        }
      }
    }
  return count;
}

TEST(FovMask, FullFrameLinearBeamCoversEverything) {
  const FovMask m = build_fov_mask(full_frame_linear(40, 60), 40, 60);
  EXPECT_EQ(m.count(), 40u * 60u);
}

TEST(FovMask, SectorContainsBisectorMidRadius) {
  const auto b = curvilinear_128();
  const double r = 0.5 * (60.0 + 140.0);
  const FovMask m = build_fov_mask(b, 128, 128);
  const int row = static_cast<int>(std::lround(-40.0 + r));
  EXPECT_TRUE(m.at(row, 64));
  EXPECT_TRUE(beam_contains(b, 128, 128, 64.0, -40.0 + r));
  EXPECT_FALSE(m.at(0, 0));
}

TEST(FovMask, SectorEdgesFollowPolarBounds) {
  const auto b = curvilinear_128();
  const FovMask m = build_fov_mask(b, 128, 128);
  for (int r = 0; r < 128; ++r)
    for (int c = 0; c < 128; ++c) {
      const double dx = c - 64.0, dy = r + 40.0;
      const double rad = std::hypot(dx, dy);
      const double phi = std::atan2(dx, dy);
      const bool inside = rad >= 60.0 - 1e-6 && rad <= 140.0 + 1e-6 && std::abs(phi) <= 25.0 * M_PI / 180.0 + 1e-6;
      // Points within a hair of the boundary may go either way.
      const bool near_edge = std::abs(rad - 60.0) < 1e-3 || std::abs(rad - 140.0) < 1e-3 ||
                             std::abs(std::abs(phi) - 25.0 * M_PI / 180.0) < 1e-5;
      if (!near_edge) {
        ASSERT_EQ(bool(m.at(r, c)), inside) << r << "," << c;
      }
    }
}

TEST(FovMask, EveryBeamTypeGivesOneNonEmptyComponent) {
  for (const auto& b : {curvilinear_128(), phased_128(), testing::linear_128()}) {
    const FovMask m = build_fov_mask(b, 128, 128);
    EXPECT_GT(m.count(), 0u);
    EXPECT_LE(m.count(), 128u * 128u);
    EXPECT_EQ(components(m), 1);
  }
}

TEST(FovMask, AspectCorrectionStretchesSector) {
  auto b = curvilinear_128();
  b.original_aspect = 2.0;  // content is twice as wide as it is tall
  // A point on the bisector is unaffected; a point on the true lateral edge
  // of the squeezed sector must lie inside.
  EXPECT_TRUE(beam_contains(b, 128, 128, 64.0, 60.0));
  const FovMask square = build_fov_mask(curvilinear_128(), 128, 128);
  const FovMask squeezed = build_fov_mask(b, 128, 128);
  EXPECT_NE(square.count(), squeezed.count());
}

TEST(FovMask, BeamBelowFrameThrows) {
  const auto b = BeamDescriptor::linear({10, 200}, {20, 200}, {10, 300}, {20, 300});
  EXPECT_THROW(build_fov_mask(b, 64, 64), GeometryError);
}

TEST(ApplyMask, IdentityAndIdempotence) {
  const Image img = testing::textured_image(50, 70, 3, 1);
  EXPECT_EQ(apply_mask(img, FovMask(50, 70, true)), img);
  const FovMask m = build_fov_mask(BeamDescriptor::linear({10, 5}, {50, 5}, {10, 40}, {50, 40}), 50, 70);
  const Image once = apply_mask(img, m);
  EXPECT_EQ(apply_mask(once, m), once);
  EXPECT_TRUE(testing::zero_outside(once, m));
}

TEST(ApplyMask, NonzeroCountMatchesMask) {
  const Image white(64, 64, 3, 255);
  FovMask half(64, 64);
  for (int r = 0; r < 32; ++r)
    for (int c = 0; c < 64; ++c) half.set(r, c, true);
  const Image out = apply_mask(white, half);
  const auto d = out.data();
  EXPECT_EQ(static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](auto v) { return v != 0; })),
            half.count() * 3);
  EXPECT_THROW(apply_mask(white, FovMask(32, 64, true)), ShapeError);
}

TEST(CropToFov, FullFrameIsIdentity) {
  const Image img = testing::gradient_image(30, 40);
  const auto b = full_frame_linear(30, 40);
  const auto res = crop_to_fov(img, FovMask(30, 40, true), b);
  EXPECT_EQ(res.image, img);
  EXPECT_EQ(res.beam, b);
}

TEST(CropToFov, TightBoundingBox) {
  const Image img = testing::textured_image(128, 128, 1, 4);
  FovMask m(128, 128);
  for (int r = 10; r <= 89; ++r)
    for (int c = 20; c <= 119; ++c) m.set(r, c, true);
  const auto b = BeamDescriptor::linear({30, 15}, {100, 15}, {30, 80}, {100, 80});
  const auto res = crop_to_fov(img, m, b);
  EXPECT_EQ(res.image.height(), 80);
  EXPECT_EQ(res.image.width(), 100);
  EXPECT_EQ(res.beam.p1, (Point2{10, 5}));
  EXPECT_EQ(res.image.at(0, 0), img.at(10, 20));
  EXPECT_EQ(res.mask.count(), m.count());
}

TEST(Preprocess, PreservesInMaskSumAndIsIdempotent) {
  for (const auto& b : {curvilinear_128(), phased_128(), testing::linear_128()}) {
    const Image img = testing::textured_image(128, 128, 3, 7);
    const FovMask m = build_fov_mask(b, 128, 128);
    const Image masked = apply_mask(img, m);
    const auto first = preprocess(img, b);
    const auto d0 = masked.data();
    const auto d1 = first.image.data();
    EXPECT_EQ(std::accumulate(d0.begin(), d0.end(), 0ULL), std::accumulate(d1.begin(), d1.end(), 0ULL));
    const auto box = m.bounding_box();
    ASSERT_TRUE(box);
    EXPECT_EQ(first.image.height(), box->height());
    EXPECT_EQ(first.image.width(), box->width());
    EXPECT_TRUE(testing::zero_outside(first.image, first.mask));
    const auto second = preprocess(first.image, first.beam);
    EXPECT_EQ(second.image, first.image);
    EXPECT_EQ(second.mask, first.mask);
  }
}

TEST(Preprocess, CropUpdatesOriginalAspect) {
  auto b = curvilinear_128();
  b.original_aspect = 1.5;
  const auto res = preprocess(testing::gradient_image(128, 128), b);
  const double ax = 1.5;  // original_aspect * h / w for a square raster
  EXPECT_NEAR(*res.beam.original_aspect, ax * res.image.width() / res.image.height(), 1e-12);
  EXPECT_NEAR(res.beam.aspect_correction(res.image.height(), res.image.width()), ax, 1e-12);
}

TEST(Preprocess, LinearOnlyProducesLinearBeam) {
  const auto res = preprocess_linear_only(testing::gradient_image(128, 128), curvilinear_128());
  EXPECT_EQ(res.beam.probe_type, ProbeType::linear);
  EXPECT_TRUE(testing::zero_outside(res.image, res.mask));
}

}  // namespace
}  // namespace usaug
