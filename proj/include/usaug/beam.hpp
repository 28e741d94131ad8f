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

#ifndef USAUG_BEAM_HPP
#define USAUG_BEAM_HPP

#include <optional>
#include <string>
#include <string_view>

namespace usaug {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  bool operator==(const Point2&) const = default;
};

double distance(Point2 a, Point2 b) noexcept;

/// Intersection of the infinite lines a1a2 and b1b2; empty when (nearly) parallel.
std::optional<Point2> line_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2) noexcept;

/// Angle of the ray apex->p measured from the downward vertical, positive to the right.
double angle_from_vertical(Point2 apex, Point2 p) noexcept;

enum class ProbeType { linear, curvilinear, phased_array };

/// Manifest spelling: "linear", "curvilinear", "phased".
std::string_view to_string(ProbeType t) noexcept;
ProbeType probe_type_from_string(std::string_view s);

/**
 * Beam geometry in pixel coordinates of the image it travels with.
 *
 * p1..p4 are the top-left, top-right, bottom-left and bottom-right vertices.
 * Convex beams (curvilinear, phased array) also carry the apex p0, the
 * intersection of lines p1p3 and p2p4, and the apex angle theta0 in radians.
 *
 * original_aspect is the width/height ratio of the acquisition before it was
 * resized into the current raster. When it differs from the raster's own
 * ratio, circular sectors appear as ellipses in pixel space and every
 * sector computation is done in a horizontally rescaled frame.
 */
struct BeamDescriptor {
  ProbeType probe_type = ProbeType::linear;
  Point2 p1;
  Point2 p2;
  Point2 p3;
  Point2 p4;
  std::optional<Point2> p0;
  std::optional<double> theta0;
  std::optional<double> original_aspect;

  bool is_convex() const noexcept { return probe_type != ProbeType::linear; }

  static BeamDescriptor linear(Point2 p1, Point2 p2, Point2 p3, Point2 p4,
                               std::optional<double> original_aspect = std::nullopt);

  /// Builds a convex beam, deriving p0 and theta0 from the lateral lines.
  static BeamDescriptor convex(ProbeType type, Point2 p1, Point2 p2, Point2 p3, Point2 p4,
                               std::optional<double> original_aspect = std::nullopt);

  /// Throws GeometryError when an invariant is violated.
  void validate() const;

  /// Horizontal scale that makes pixel geometry Euclidean for a raster of this size.
  double aspect_correction(int height, int width) const noexcept;

  /// Radii of the top and bottom arcs (convex beams).
  double top_radius() const;
  double bottom_radius() const;

  bool operator==(const BeamDescriptor&) const = default;
};

/// Fills p0/theta0 from the vertices when absent; leaves present values alone.
BeamDescriptor with_derived_apex(BeamDescriptor beam);

/// Recomputes p0 and theta0 from the vertices.
BeamDescriptor rederive_apex(BeamDescriptor beam);

/// Coordinates follow x' = x + dx, y' = y + dy.
BeamDescriptor translated(const BeamDescriptor& beam, double dx, double dy);

/**
 * Pixel-centre scaling, matching a resize of a height x width raster to
 * new_height x new_width. original_aspect is preserved, which keeps sectors
 * consistent with the resampled pixels.
 */
BeamDescriptor resized(const BeamDescriptor& beam, int height, int width, int new_height,
                       int new_width);

/// Mirror about the central vertical axis of a raster of the given width.
BeamDescriptor mirrored(const BeamDescriptor& beam, int width);

}  // namespace usaug

#endif  // USAUG_BEAM_HPP
