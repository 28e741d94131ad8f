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

#include "usaug/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "usaug/errors.hpp"
#include "usaug/geometry.hpp"

namespace usaug {

namespace {

constexpr int kMaxRedraws = 10;
constexpr std::uint64_t kRedrawKey = 0x63726f70ULL;    // "crop"
constexpr std::uint64_t kPlacementKey = 0x706c6163ULL;  // "plac"

// The smallest raster an Image can hold.
constexpr int kMinSide = 2;

struct Extent {
  int width;
  int height;
};

Extent window_extent(int height, int width, double area, double aspect) {
  const double target = area * height * width;
  int h = static_cast<int>(std::lround(std::sqrt(target / aspect)));
  int w = static_cast<int>(std::lround(aspect * h));
  // Clamping one side recomputes the other from the drawn area.
  if (w > width) {
    w = width;
    h = static_cast<int>(std::lround(target / width));
  }
  if (h > height) {
    h = height;
    w = static_cast<int>(std::lround(target / height));
  }
  return {std::min(w, width), std::min(h, height)};
}

}  // namespace

void CropParams::validate() const {
  if (!(min_area_c > 0.0 && min_area_c <= max_area && max_area <= 1.0))
    throw ParameterError("crop areas must satisfy 0 < min_area_c <= max_area <= 1");
  if (!(aspect_lo > 0.0 && aspect_lo <= aspect_hi))
    throw ParameterError("crop aspect bounds must satisfy 0 < aspect_lo <= aspect_hi");
}

void AffineParams::validate() const {
  if (!(angle_deg >= -180.0 && angle_deg <= 180.0))
    throw ParameterError("rotation angle must lie in [-180, 180] degrees");
  if (!(std::abs(shift_x_frac) <= 1.0 && std::abs(shift_y_frac) <= 1.0))
    throw ParameterError("shift fractions must lie in [-1, 1]");
}

CropWindow sample_crop_window(int height, int width, const CropParams& params, RngStream& stream,
                              const FovMask* fov) {
  params.validate();
  if (params.restrict_to_fov && fov == nullptr)
    throw ParameterError("restrict_to_fov needs a field-of-view mask");
  if (fov && (fov->height() != height || fov->width() != width))
    throw ShapeError("mask and image dimensions differ");

  CropWindow win;
  win.area_fraction = stream.uniform(params.min_area_c, params.max_area);
  win.aspect = stream.uniform(params.aspect_lo, params.aspect_hi);
  Extent ext = window_extent(height, width, win.area_fraction, win.aspect);
  RngStream redraw = stream.derive(kRedrawKey);
  int attempts = 0;
  while ((ext.width < kMinSide || ext.height < kMinSide) && attempts < kMaxRedraws) {
    win.area_fraction = redraw.uniform(params.min_area_c, params.max_area);
    win.aspect = redraw.uniform(params.aspect_lo, params.aspect_hi);
    ext = window_extent(height, width, win.area_fraction, win.aspect);
    ++attempts;
  }
  if (ext.width < kMinSide || ext.height < kMinSide) {
    // Full-frame fallback. The position draws are still consumed.
    (void)stream.uniform_int(0, 0);
    (void)stream.uniform_int(0, 0);
    return {0, 0, width, height, 1.0, static_cast<double>(width) / height};
  }
  win.width = ext.width;
  win.height = ext.height;
  win.x = stream.uniform_int(0, width - win.width);
  win.y = stream.uniform_int(0, height - win.height);

  if (params.restrict_to_fov) {
    auto centre_inside = [&] {
      const int cr = win.y + win.height / 2;
      const int cc = win.x + win.width / 2;
      return fov->at(cr, cc) != 0;
    };
    RngStream place = stream.derive(kPlacementKey);
    for (int k = 0; k < kMaxRedraws && !centre_inside(); ++k) {
      win.x = place.uniform_int(0, width - win.width);
      win.y = place.uniform_int(0, height - win.height);
    }
  }
  return win;
}

Image crop_resize_window(const Image& image, const CropWindow& window) {
  const int h = image.height();
  const int w = image.width();
  if (window.x < 0 || window.y < 0 || window.width < kMinSide || window.height < kMinSide ||
      window.x + window.width > w || window.y + window.height > h)
    throw ShapeError("crop window lies outside the image");
  if (window.width == w && window.height == h) return image;
  const int ch = image.channels();
  Image crop(window.height, window.width, ch);
  for (int r = 0; r < window.height; ++r) {
    const std::uint8_t* src = image.row_ptr(window.y + r) + std::size_t(window.x) * ch;
    std::copy(src, src + std::size_t(window.width) * ch, crop.row_ptr(r));
  }
  return resize_bilinear(crop, h, w);
}

BeamDescriptor crop_resize_beam(const BeamDescriptor& beam, int height, int width,
                                const CropWindow& window) {
  if (window.width == width && window.height == height && window.x == 0 && window.y == 0)
    return beam;
  const double ax = beam.aspect_correction(height, width);
  BeamDescriptor out = translated(beam, -window.x, -window.y);
  out = resized(out, window.height, window.width, height, width);
  out.original_aspect = ax * static_cast<double>(window.width) / window.height;
  return out;
}

Image crop_resize(const Image& image, const CropParams& params, RngStream& stream) {
  const CropWindow win = sample_crop_window(image.height(), image.width(), params, stream);
  return crop_resize_window(image, win);
}

Image hflip(const Image& image) {
  Image out(image.height(), image.width(), image.channels());
  const int w = image.width();
  const int ch = image.channels();
  for (int r = 0; r < image.height(); ++r) {
    const std::uint8_t* src = image.row_ptr(r);
    std::uint8_t* dst = out.row_ptr(r);
    for (int c = 0; c < w; ++c)
      std::copy(src + std::size_t(c) * ch, src + std::size_t(c + 1) * ch,
                dst + std::size_t(w - 1 - c) * ch);
  }
  return out;
}

Image rotate_shift(const Image& image, const AffineParams& params) {
  params.validate();
  if (params.angle_deg == 0.0 && params.shift_x_frac == 0.0 && params.shift_y_frac == 0.0)
    return image;
  const int h = image.height();
  const int w = image.width();
  const double theta = params.angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = 0.5 * (w - 1);
  const double cy = 0.5 * (h - 1);
  const double tx = params.shift_x_frac * w;
  const double ty = params.shift_y_frac * h;
  CoordinateMap map(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      // Undo the shift, then the rotation (rows grow downwards, so a
      // counter-clockwise turn on screen is clockwise in (x, y)).
      const double dx = c - tx - cx;
      const double dy = r - ty - cy;
      const double sx = cx + cs * dx - sn * dy;
      const double sy = cy + sn * dx + cs * dy;
      map.set(r, c, to_normalized(sx, w), to_normalized(sy, h));
    }
  }
  return remap(image, map);
}

}  // namespace usaug
