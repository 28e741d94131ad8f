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

#include "usaug/fov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "usaug/errors.hpp"
#include "usaug/geometry.hpp"

namespace usaug {

namespace {

// Pixel centres exactly on an edge count as inside.
constexpr double kEdgeEps = 1e-7;

double cross(Point2 o, Point2 a, Point2 b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct SectorTest {
  double ax;
  Point2 apex;
  double r_top;
  double r_bottom;
  double phi_left;
  double phi_right;

  SectorTest(const BeamDescriptor& beam, int height, int width) {
    ax = beam.aspect_correction(height, width);
    auto e = [this](Point2 p) { return Point2{p.x * ax, p.y}; };
    apex = e(*beam.p0);
    r_top = distance(apex, e(beam.p1));
    r_bottom = distance(apex, e(beam.p3));
    // p3/p4 lie on the same rays as p1/p2 and stay defined when the top
    // collapses onto the apex.
    phi_left = angle_from_vertical(apex, e(beam.p3));
    phi_right = angle_from_vertical(apex, e(beam.p4));
  }

  bool contains(double col, double row) const noexcept {
    const Point2 q{col * ax, row};
    const double r = distance(apex, q);
    if (r < r_top - kEdgeEps || r > r_bottom + kEdgeEps) return false;
    const double phi = angle_from_vertical(apex, q);
    return phi >= phi_left - kEdgeEps && phi <= phi_right + kEdgeEps;
  }
};

bool quad_contains(const BeamDescriptor& b, double col, double row) noexcept {
  // p1 -> p2 -> p4 -> p3 is clockwise on screen (y down), so every interior
  // point sees a non-negative cross product.
  const Point2 q{col, row};
  const Point2 ring[4] = {b.p1, b.p2, b.p4, b.p3};
  for (int i = 0; i < 4; ++i) {
    const Point2 a = ring[i];
    const Point2 c = ring[(i + 1) % 4];
    const double len = distance(a, c);
    if (cross(a, c, q) < -kEdgeEps * std::max(len, 1.0)) return false;
  }
  return true;
}

}  // namespace

FovMask::FovMask(int height, int width, bool fill) : height_(height), width_(width) {
  if (height < 1 || width < 1) throw ShapeError("mask dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(height) * width, fill ? 1 : 0);
}

FovMask::FovMask(int height, int width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  if (height < 1 || width < 1) throw ShapeError("mask dimensions must be positive");
  if (bits_.size() != static_cast<std::size_t>(height) * width)
    throw ShapeError("mask buffer length does not match its dimensions");
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t FovMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::optional<PixelBox> FovMask::bounding_box() const noexcept {
  PixelBox box{height_, -1, width_, -1};
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (!at(r, c)) continue;
      box.min_row = std::min(box.min_row, r);
      box.max_row = std::max(box.max_row, r);
      box.min_col = std::min(box.min_col, c);
      box.max_col = std::max(box.max_col, c);
    }
  }
  if (box.max_row < 0) return std::nullopt;
  return box;
}

FovMask FovMask::cropped(const PixelBox& box) const {
  if (box.min_row < 0 || box.min_col < 0 || box.max_row >= height_ || box.max_col >= width_ ||
      box.height() < 1 || box.width() < 1)
    throw ShapeError("crop box lies outside the mask");
  FovMask out(box.height(), box.width());
  for (int r = 0; r < box.height(); ++r)
    for (int c = 0; c < box.width(); ++c) out.set(r, c, at(r + box.min_row, c + box.min_col));
  return out;
}

bool beam_contains(const BeamDescriptor& beam, int height, int width, double col, double row) {
  if (!beam.is_convex()) return quad_contains(beam, col, row);
  const BeamDescriptor b = with_derived_apex(beam);
  return SectorTest(b, height, width).contains(col, row);
}

FovMask build_fov_mask(const BeamDescriptor& beam, int height, int width) {
  beam.validate();
  FovMask mask(height, width);
  if (beam.is_convex()) {
    const SectorTest sector(beam, height, width);
    if (!(sector.r_bottom > sector.r_top) || !(sector.phi_right > sector.phi_left))
      throw GeometryError("beam sector has zero area");
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) mask.set(r, c, sector.contains(c, r));
  } else {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) mask.set(r, c, quad_contains(beam, c, r));
  }
  if (mask.count() == 0)
    throw GeometryError("beam covers no pixel centre of the " + std::to_string(height) + "x" +
                        std::to_string(width) + " raster");
  return mask;
}

Image apply_mask(const Image& image, const FovMask& mask) {
  if (image.height() != mask.height() || image.width() != mask.width())
    throw ShapeError("mask and image dimensions differ");
  Image out = image;
  const int ch = image.channels();
  auto px = out.data();
  const auto& bits = mask.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) continue;
    for (int k = 0; k < ch; ++k) px[i * ch + k] = 0;
  }
  return out;
}

PreprocessResult crop_to_fov(const Image& image, const FovMask& mask,
                             const BeamDescriptor& beam) {
  if (image.height() != mask.height() || image.width() != mask.width())
    throw ShapeError("mask and image dimensions differ");
  const auto box = mask.bounding_box();
  if (!box) throw GeometryError("cannot crop to an empty field of view");
  if (box->height() < 2 || box->width() < 2)
    throw GeometryError("field of view is thinner than two pixels");
  const int ch = image.channels();
  Image out(box->height(), box->width(), ch);
  for (int r = 0; r < box->height(); ++r) {
    const std::uint8_t* src = image.row_ptr(r + box->min_row) + box->min_col * ch;
    std::copy(src, src + box->width() * ch, out.row_ptr(r));
  }
  BeamDescriptor moved = translated(beam, -box->min_col, -box->min_row);
  // The crop changes the raster ratio but not the content's geometry.
  if (moved.original_aspect) {
    const double ax = beam.aspect_correction(image.height(), image.width());
    moved.original_aspect = ax * static_cast<double>(box->width()) / box->height();
  }
  return {std::move(out), std::move(moved), mask.cropped(*box)};
}

PreprocessResult preprocess(const Image& image, const BeamDescriptor& beam) {
  const FovMask mask = build_fov_mask(beam, image.height(), image.width());
  return crop_to_fov(apply_mask(image, mask), mask, beam);
}

PreprocessResult preprocess_linear_only(const Image& image, const BeamDescriptor& beam,
                                        std::optional<double> omega) {
  PreprocessResult first = preprocess(image, beam);
  if (!first.beam.is_convex()) return first;
  const double w = first.image.width();
  const double chord = first.beam.p4.x - first.beam.p3.x;
  const double fraction = omega.value_or(std::clamp(chord / w, 1e-3, 1.0));
  auto [img, linear] = probe_type_change(first.image, first.beam, 1.0, fraction);
  return preprocess(img, linear);
}

}  // namespace usaug
