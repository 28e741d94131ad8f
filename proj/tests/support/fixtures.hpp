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

#ifndef USAUG_TESTS_FIXTURES_HPP
#define USAUG_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/fov.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug::testing {

/// Smooth ramp, brighter to the right and bottom.
inline Image gradient_image(int h, int w, int channels = 1) {
  Image img(h, w, channels);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < channels; ++k)
        img.at(r, c, k) = saturate_u8(20.0 + 200.0 * (0.6 * c / (w - 1) + 0.4 * r / (h - 1)) + 5.0 * k);
  return img;
}

/// Smooth ramp plus hashed per-pixel texture.
inline Image textured_image(int h, int w, int channels, std::uint64_t seed) {
  Image img(h, w, channels);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < channels; ++k) {
        const std::uint64_t hv = mix64(seed ^ mix64((std::uint64_t(r) << 32) | (std::uint64_t(c) << 2) | k));
        const double noise = static_cast<double>(hv % 61) - 30.0;
        img.at(r, c, k) = saturate_u8(60.0 + 120.0 * (0.5 * c / (w - 1) + 0.5 * r / (h - 1)) + noise);
      }
  return img;
}

inline Image constant_image(int h, int w, int channels, std::uint8_t v) { return Image(h, w, channels, v); }

inline BeamDescriptor full_frame_linear(int h, int w) {
  return BeamDescriptor::linear({0, 0}, {double(w - 1), 0}, {0, double(h - 1)}, {double(w - 1), double(h - 1)});
}

/// Symmetric sector: apex, half angle (radians), top and bottom radii.
inline BeamDescriptor sector_beam(ProbeType type, Point2 apex, double half_angle, double r_top, double r_bottom) {
  const double s = std::sin(half_angle);
  const double c = std::cos(half_angle);
  return BeamDescriptor::convex(type, {apex.x - r_top * s, apex.y + r_top * c}, {apex.x + r_top * s, apex.y + r_top * c},
                                {apex.x - r_bottom * s, apex.y + r_bottom * c},
                                {apex.x + r_bottom * s, apex.y + r_bottom * c});
}

/// Curvilinear sector that fits a 128 x 128 raster with its apex above the frame.
inline BeamDescriptor curvilinear_128() {
  return sector_beam(ProbeType::curvilinear, {64, -40}, 25.0 * std::numbers::pi / 180.0, 60.0, 140.0);
}

/// Phased-array sector with a nearly degenerate top arc inside a 128 x 128 raster.
inline BeamDescriptor phased_128() {
  return sector_beam(ProbeType::phased_array, {64, 2}, 30.0 * std::numbers::pi / 180.0, 4.0, 120.0);
}

/// Linear beam inset from the borders of a 128 x 128 raster.
inline BeamDescriptor linear_128() { return BeamDescriptor::linear({16, 8}, {111, 8}, {16, 119}, {111, 119}); }

inline double mean_abs_diff(const Image& a, const Image& b, int border_rows = 0, int border_cols = 0) {
  double sum = 0.0;
  std::size_t n = 0;
  for (int r = border_rows; r < a.height() - border_rows; ++r)
    for (int c = border_cols; c < a.width() - border_cols; ++c)
      for (int k = 0; k < a.channels(); ++k) {
        sum += std::abs(double(a.at(r, c, k)) - double(b.at(r, c, k)));
        ++n;
      }
  return n ? sum / static_cast<double>(n) : 0.0;
}

inline double mse(const Image& a, const Image& b) {
  double sum = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = double(da[i]) - double(db[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(da.size());
}

/// True when every pixel outside the mask is zero in all channels.
inline bool zero_outside(const Image& img, const FovMask& mask) {
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c)
      if (!mask.at(r, c))
        for (int k = 0; k < img.channels(); ++k)
          if (img.at(r, c, k) != 0) return false;
  return true;
}

}  // namespace usaug::testing

#endif  // USAUG_TESTS_FIXTURES_HPP
