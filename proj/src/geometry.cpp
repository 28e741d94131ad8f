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

#include "usaug/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "usaug/errors.hpp"
#include "usaug/fov.hpp"

namespace usaug {

namespace {

// Normalized coordinates a hair past +/-1 still sample the edge pixel.
constexpr double kRangeSlack = 1e-5;

void require_convex(const BeamDescriptor& beam) {
  if (!beam.is_convex()) throw GeometryError("operation requires a convex beam");
  if (!beam.p0 || !beam.theta0) throw GeometryError("convex beam is missing p0 or theta0");
}

/// Runs fn in a raster whose pixels are square with respect to the acquisition.
BeamImage in_acquisition_frame(const Image& image, const BeamDescriptor& beam,
                               const std::function<BeamImage(const Image&, const BeamDescriptor&)>& fn) {
  const int h = image.height();
  const int w = image.width();
  const double ax = beam.aspect_correction(h, w);
  BeamImage result = [&]() -> BeamImage {
    if (std::abs(ax - 1.0) <= 1e-6) return fn(image, beam);
    const int w2 = std::max(2, static_cast<int>(std::lround(w * ax)));
    BeamDescriptor b2 = resized(beam, h, w, h, w2);
    b2.original_aspect.reset();
    BeamImage inner = fn(resize_bilinear(image, h, w2), b2);
    BeamDescriptor back = resized(inner.beam, h, w2, h, w);
    back.original_aspect = beam.original_aspect;
    return {resize_bilinear(inner.image, h, w), back};
  }();
  result.image = apply_mask(result.image, build_fov_mask(result.beam, h, w));
  return result;
}

}  // namespace

CoordinateMap identity_map(int height, int width) {
  CoordinateMap m(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) m.set(r, c, to_normalized(c, width), to_normalized(r, height));
  return m;
}

Image remap(const Image& image, const CoordinateMap& map) {
  if (map.fx.size() != std::size_t(map.height) * map.width || map.fy.size() != map.fx.size())
    throw ShapeError("coordinate map buffers do not match its dimensions");
  const int sh = image.height();
  const int sw = image.width();
  const int ch = image.channels();
  Image out(map.height, map.width, ch);
  auto dst = out.data();
  const auto src = image.data();
  const double sx_scale = 0.5 * (sw - 1);
  const double sy_scale = 0.5 * (sh - 1);
  const std::size_t n = map.fx.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double nx = map.fx[i];
    const double ny = map.fy[i];
    if (!(nx >= -1.0 - kRangeSlack && nx <= 1.0 + kRangeSlack && ny >= -1.0 - kRangeSlack &&
          ny <= 1.0 + kRangeSlack))
      continue;
    const double x = std::clamp((nx + 1.0) * sx_scale, 0.0, double(sw - 1));
    const double y = std::clamp((ny + 1.0) * sy_scale, 0.0, double(sh - 1));
    const int x0 = std::min(static_cast<int>(x), sw - 2);
    const int y0 = std::min(static_cast<int>(y), sh - 2);
    const double tx = x - x0;
    const double ty = y - y0;
    const std::size_t a = (std::size_t(y0) * sw + x0) * ch;
    const std::size_t b = a + ch;
    const std::size_t c = a + std::size_t(sw) * ch;
    const std::size_t d = c + ch;
    for (int k = 0; k < ch; ++k) {
      const double top = src[a + k] + tx * (src[b + k] - src[a + k]);
      const double bot = src[c + k] + tx * (src[d + k] - src[c + k]);
      dst[i * ch + k] = saturate_u8(top + ty * (bot - top));
    }
  }
  return out;
}

Image resize_bilinear(const Image& image, int new_height, int new_width) {
  const int h = image.height();
  const int w = image.width();
  if (new_height == h && new_width == w) return image;
  CoordinateMap m(new_height, new_width);
  const double sx = static_cast<double>(w) / new_width;
  const double sy = static_cast<double>(h) / new_height;
  for (int r = 0; r < new_height; ++r) {
    const double y = std::clamp((r + 0.5) * sy - 0.5, 0.0, double(h - 1));
    for (int c = 0; c < new_width; ++c) {
      const double x = std::clamp((c + 0.5) * sx - 0.5, 0.0, double(w - 1));
      m.set(r, c, to_normalized(x, w), to_normalized(y, h));
    }
  }
  return remap(image, m);
}

RemapResult linear_to_convex_map(const BeamDescriptor& beam, double rho, int height, int width) {
  if (beam.is_convex()) throw GeometryError("linear_to_convex_map requires a linear beam");
  if (!(rho >= 1.0)) throw ParameterError("radius factor rho must be >= 1");
  beam.validate();
  const double x1 = beam.p1.x, y1 = beam.p1.y;
  const double x3 = beam.p3.x, y3 = beam.p3.y;
  const double x4 = beam.p4.x;

  const double r_b = rho * (y3 - y1);
  const double x0n = std::max(x3, 0.0) + (x4 - x3) / 2.0;
  const double y0n = y3 - r_b;
  const double disc = r_b * r_b - (x0n - x1) * (x0n - x1);
  if (!(disc > 0.0)) throw GeometryError("radius factor too small for the beam width");
  const double y3n = y0n + std::sqrt(disc);
  const double x1n = x0n - (y1 - y0n) * (x0n - x3) / (y3n - y0n);
  const double x2n = 2.0 * x0n - x1n;
  const double r_t = std::hypot(x0n - x1n, y1 - y0n);
  const double half = std::atan2(x0n - x3, y3n - y0n);
  if (!(half > 0.0) || !(r_b > r_t)) throw GeometryError("degenerate linear beam");

  BeamDescriptor out;
  out.probe_type = ProbeType::curvilinear;
  out.p1 = {x1n, y1};
  out.p2 = {x2n, y1};
  out.p3 = {x3, y3n};
  out.p4 = {2.0 * x0n - x3, y3n};
  out.p0 = Point2{x0n, y0n};
  out.theta0 = 2.0 * half;
  out.original_aspect = beam.original_aspect;

  CoordinateMap map(height, width);
  const double span_x = x4 - x3;
  const double span_y = y3 - y1;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double phi = std::atan2(c - x0n, r - y0n);
      const double u = phi / half;
      const double v = (std::hypot(x0n - c, y0n - r) - r_t) / (r_b - r_t);
      const double sx = x3 + 0.5 * (u + 1.0) * span_x;
      const double sy = y1 + v * span_y;
      map.set(r, c, to_normalized(sx, width), to_normalized(sy, height));
    }
  }
  return {std::move(map), out};
}

RemapResult convex_to_linear_map(const BeamDescriptor& beam, double omega, int height, int width) {
  require_convex(beam);
  if (!(omega > 0.0 && omega <= 1.0)) throw ParameterError("width fraction omega must be in (0, 1]");
  const Point2 p0 = *beam.p0;
  const double y1 = beam.p1.y;
  const double r_b = distance(p0, beam.p3);
  const double x1n = p0.x - omega * width / 2.0;
  const double x2n = p0.x + omega * width / 2.0;
  const double y3n = p0.y + r_b;
  const double phi_l = angle_from_vertical(p0, beam.p3);
  const double phi_r = angle_from_vertical(p0, beam.p4);
  const bool curvilinear = beam.probe_type == ProbeType::curvilinear;
  const double r_t_arc = distance(p0, beam.p1);
  if (!(y3n > y1) || !(phi_r > phi_l)) throw GeometryError("degenerate convex beam");

  BeamDescriptor out;
  out.probe_type = ProbeType::linear;
  out.p1 = {x1n, y1};
  out.p2 = {x2n, y1};
  out.p3 = {x1n, y3n};
  out.p4 = {x2n, y3n};
  out.original_aspect = beam.original_aspect;

  CoordinateMap map(height, width);
  for (int c = 0; c < width; ++c) {
    const double phi = phi_l + (c - x1n) / (x2n - x1n) * (phi_r - phi_l);
    const double s = std::sin(phi);
    const double k = std::cos(phi);
    const double r_t = curvilinear ? r_t_arc : (y1 - p0.y) / k;
    for (int r = 0; r < height; ++r) {
      const double yn = (r - y1) / (y3n - y1);
      const double rad = r_t + yn * (r_b - r_t);
      map.set(r, c, to_normalized(p0.x + s * rad, width), to_normalized(p0.y + k * rad, height));
    }
  }
  return {std::move(map), out};
}

RemapResult convexity_change_map(const BeamDescriptor& beam, double w_prime, int height,
                                 int width) {
  require_convex(beam);
  if (!(w_prime > 0.0)) throw ParameterError("new top width must be positive");
  const Point2 p0 = *beam.p0;
  const double x1 = beam.p1.x, x2 = beam.p2.x, y1 = beam.p1.y;
  const double top = x2 - x1;
  if (!(top > 0.0)) throw GeometryError("beam top has zero width; convexity is undefined");
  const double s = w_prime * (beam.p4.x - beam.p3.x) / top;
  const double x1n = p0.x - s * (p0.x - x1);
  const double x2n = p0.x + s * (x2 - p0.x);

  BeamDescriptor out = beam;
  out.p1 = {x1n, y1};
  out.p2 = {x2n, y1};
  const auto apex = line_intersection(out.p1, out.p3, out.p2, out.p4);
  if (!apex) throw GeometryError("new lateral edges are parallel");
  if (!(apex->y <= y1)) throw GeometryError("new lateral edges meet below the beam top");
  out.p0 = *apex;
  out.theta0 = angle_from_vertical(*apex, out.p4) - angle_from_vertical(*apex, out.p3);
  const Point2 p0n = *apex;

  const double r_b = distance(p0, beam.p3);
  const double r_bn = distance(p0n, out.p3);
  const double r_t = distance(p0, beam.p1);
  const double r_tn = distance(p0n, out.p1);
  const double phi_l = angle_from_vertical(p0, beam.p3);
  const double phi_r = angle_from_vertical(p0, beam.p4);
  const double phi_ln = angle_from_vertical(p0n, out.p3);
  const double phi_rn = angle_from_vertical(p0n, out.p4);
  if (!(r_bn > r_tn) || !(phi_rn > phi_ln)) throw GeometryError("degenerate convexity change");
  const double angle_scale = (phi_r - phi_l) / (phi_rn - phi_ln);
  const double radius_scale = (r_b - r_t) / (r_bn - r_tn);

  CoordinateMap map(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double phi = phi_l + (std::atan2(c - p0n.x, r - p0n.y) - phi_ln) * angle_scale;
      const double rad = (std::hypot(p0n.x - c, p0n.y - r) - r_tn) * radius_scale + r_t;
      map.set(r, c, to_normalized(p0.x + rad * std::sin(phi), width),
              to_normalized(p0.y + rad * std::cos(phi), height));
    }
  }
  return {std::move(map), out};
}

BeamImage probe_type_change(const Image& image, const BeamDescriptor& beam, double rho,
                            double omega) {
  beam.validate();
  return in_acquisition_frame(image, beam, [&](const Image& img, const BeamDescriptor& b) {
    RemapResult m = b.is_convex() ? convex_to_linear_map(b, omega, img.height(), img.width())
                                  : linear_to_convex_map(b, rho, img.height(), img.width());
    return BeamImage{remap(img, m.map), m.beam};
  });
}

BeamImage probe_type_change(const Image& image, const BeamDescriptor& beam, RngStream& stream,
                            const ProbeChangeRanges& ranges) {
  const double rho = stream.uniform(ranges.rho_lo, ranges.rho_hi);
  const double omega = stream.uniform(ranges.omega_lo, ranges.omega_hi);
  return probe_type_change(image, beam, rho, omega);
}

BeamImage convexity_change(const Image& image, const BeamDescriptor& beam, double w_prime) {
  if (!beam.is_convex()) return {image, beam};
  beam.validate();
  return in_acquisition_frame(image, beam, [&](const Image& img, const BeamDescriptor& b) {
    RemapResult m = convexity_change_map(b, w_prime, img.height(), img.width());
    return BeamImage{remap(img, m.map), m.beam};
  });
}

CoordinateMap zoom_map(Point2 centre, double d, int height, int width) {
  CoordinateMap m(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      m.set(r, c, to_normalized(centre.x + d * (c - centre.x), width),
            to_normalized(centre.y + d * (r - centre.y), height));
  return m;
}

Image depth_change(const Image& image, const BeamDescriptor& beam, double d) {
  if (!(d > 0.0)) throw ParameterError("depth factor must be positive");
  const int h = image.height();
  const int w = image.width();
  const FovMask mask = build_fov_mask(beam, h, w);
  if (d == 1.0) return apply_mask(image, mask);
  const Point2 centre = beam.is_convex() ? *with_derived_apex(beam).p0
                                         : Point2{0.5 * (w - 1), 0.5 * (h - 1)};
  return apply_mask(remap(image, zoom_map(centre, d, h, w)), mask);
}

}  // namespace usaug
