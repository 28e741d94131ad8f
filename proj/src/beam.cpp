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

#include "usaug/beam.hpp"

#include <cmath>
#include <string>

#include "usaug/errors.hpp"

namespace usaug {

namespace {

// Vertices are pixel coordinates, so a tenth of a pixel is far below
// anything that matters for masks yet tolerant of manifest rounding.
constexpr double kApexTolerancePx = 0.1;

std::string fmt_point(Point2 p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

std::optional<Point2> line_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2) noexcept {
  const Point2 da = a2 - a1;
  const Point2 db = b2 - b1;
  const double denom = da.x * db.y - da.y * db.x;
  const double scale = std::hypot(da.x, da.y) * std::hypot(db.x, db.y);
  if (scale == 0.0 || std::abs(denom) <= 1e-12 * scale) return std::nullopt;
  const Point2 d = b1 - a1;
  const double t = (d.x * db.y - d.y * db.x) / denom;
  return a1 + t * da;
}

double angle_from_vertical(Point2 apex, Point2 p) noexcept {
  return std::atan2(p.x - apex.x, p.y - apex.y);
}

std::string_view to_string(ProbeType t) noexcept {
  switch (t) {
    case ProbeType::linear:
      return "linear";
    case ProbeType::curvilinear:
      return "curvilinear";
    case ProbeType::phased_array:
      return "phased";
  }
  return "linear";
}

ProbeType probe_type_from_string(std::string_view s) {
  if (s == "linear") return ProbeType::linear;
  if (s == "curvilinear") return ProbeType::curvilinear;
  if (s == "phased") return ProbeType::phased_array;
  throw LookupError("unknown probe type '" + std::string(s) +
                    "' (expected linear, curvilinear or phased)");
}

BeamDescriptor BeamDescriptor::linear(Point2 p1, Point2 p2, Point2 p3, Point2 p4,
                                      std::optional<double> original_aspect) {
  BeamDescriptor b;
  b.probe_type = ProbeType::linear;
  b.p1 = p1;
  b.p2 = p2;
  b.p3 = p3;
  b.p4 = p4;
  b.original_aspect = original_aspect;
  b.validate();
  return b;
}

BeamDescriptor BeamDescriptor::convex(ProbeType type, Point2 p1, Point2 p2, Point2 p3,
                                      Point2 p4, std::optional<double> original_aspect) {
  if (type == ProbeType::linear) throw GeometryError("convex() called with a linear probe type");
  BeamDescriptor b;
  b.probe_type = type;
  b.p1 = p1;
  b.p2 = p2;
  b.p3 = p3;
  b.p4 = p4;
  b.original_aspect = original_aspect;
  b = rederive_apex(b);
  b.validate();
  return b;
}

void BeamDescriptor::validate() const {
  if (p1.y != p2.y || p3.y != p4.y)
    throw GeometryError("top and bottom vertex pairs must be horizontally aligned");
  // A convex top may collapse to the apex (full pie slice).
  const bool top_ok = is_convex() ? p1.x <= p2.x : p1.x < p2.x;
  if (!top_ok || !(p3.x < p4.x))
    throw GeometryError("left vertices must lie strictly left of right vertices");
  if (!(p3.y > p1.y)) throw GeometryError("bottom vertices must lie below the top vertices");
  if (original_aspect && !(*original_aspect > 0.0))
    throw GeometryError("original_aspect must be positive");
  if (!is_convex()) {
    if (p0 || theta0) throw GeometryError("linear beams carry no apex");
    return;
  }
  if (!p0 || !theta0) throw GeometryError("convex beams require p0 and theta0");
  const auto apex = line_intersection(p1, p3, p2, p4);
  if (!apex) throw GeometryError("lateral beam edges are parallel; no apex exists");
  if (distance(*apex, *p0) > kApexTolerancePx)
    throw GeometryError("p0 " + fmt_point(*p0) + " is not the intersection of p1p3 and p2p4 " +
                        fmt_point(*apex));
  if (p0->y > p1.y) throw GeometryError("apex must lie above the top vertices");
  if (!(*theta0 > 0.0)) throw GeometryError("theta0 must be positive");
}

double BeamDescriptor::aspect_correction(int height, int width) const noexcept {
  if (!original_aspect) return 1.0;
  return *original_aspect * static_cast<double>(height) / static_cast<double>(width);
}

double BeamDescriptor::top_radius() const {
  if (!p0) throw GeometryError("beam has no apex");
  return distance(*p0, p1);
}

double BeamDescriptor::bottom_radius() const {
  if (!p0) throw GeometryError("beam has no apex");
  return distance(*p0, p3);
}

BeamDescriptor rederive_apex(BeamDescriptor beam) {
  if (!beam.is_convex()) {
    beam.p0.reset();
    beam.theta0.reset();
    return beam;
  }
  const auto apex = line_intersection(beam.p1, beam.p3, beam.p2, beam.p4);
  if (!apex) throw GeometryError("lateral beam edges are parallel; no apex exists");
  beam.p0 = *apex;
  beam.theta0 = angle_from_vertical(*apex, beam.p4) - angle_from_vertical(*apex, beam.p3);
  return beam;
}

BeamDescriptor with_derived_apex(BeamDescriptor beam) {
  if (!beam.is_convex()) return beam;
  if (beam.p0 && beam.theta0) return beam;
  const auto derived = rederive_apex(beam);
  if (!beam.p0) beam.p0 = derived.p0;
  if (!beam.theta0) beam.theta0 = derived.theta0;
  return beam;
}

BeamDescriptor translated(const BeamDescriptor& beam, double dx, double dy) {
  BeamDescriptor out = beam;
  const Point2 d{dx, dy};
  out.p1 = beam.p1 + d;
  out.p2 = beam.p2 + d;
  out.p3 = beam.p3 + d;
  out.p4 = beam.p4 + d;
  if (beam.p0) out.p0 = *beam.p0 + d;
  return out;
}

BeamDescriptor resized(const BeamDescriptor& beam, int height, int width, int new_height,
                       int new_width) {
  const double sx = static_cast<double>(new_width) / width;
  const double sy = static_cast<double>(new_height) / height;
  auto map = [&](Point2 p) { return Point2{(p.x + 0.5) * sx - 0.5, (p.y + 0.5) * sy - 0.5}; };
  BeamDescriptor out = beam;
  out.p1 = map(beam.p1);
  out.p2 = map(beam.p2);
  out.p3 = map(beam.p3);
  out.p4 = map(beam.p4);
  if (beam.is_convex()) out = rederive_apex(out);
  return out;
}

BeamDescriptor mirrored(const BeamDescriptor& beam, int width) {
  const double w1 = static_cast<double>(width - 1);
  auto flip = [w1](Point2 p) { return Point2{w1 - p.x, p.y}; };
  BeamDescriptor out = beam;
  out.p1 = flip(beam.p2);
  out.p2 = flip(beam.p1);
  out.p3 = flip(beam.p4);
  out.p4 = flip(beam.p3);
  if (beam.p0) out.p0 = flip(*beam.p0);
  return out;
}

}  // namespace usaug
