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

#ifndef USAUG_GEOMETRY_HPP
#define USAUG_GEOMETRY_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug {

/**
 * Inverse sampling map. Entry (row, col) holds the source location of output
 * pixel (row, col) in normalized coordinates: -1 is the centre of the
 * first source row/column and +1 the centre of the last one. Samples outside
 * [-1, 1] resolve to zero.
 */
struct CoordinateMap {
  int height = 0;
  int width = 0;
  std::vector<float> fx;
  std::vector<float> fy;

  CoordinateMap() = default;
  CoordinateMap(int h, int w) : height(h), width(w), fx(std::size_t(h) * w), fy(std::size_t(h) * w) {}

  void set(int row, int col, double x, double y) noexcept {
    const std::size_t i = static_cast<std::size_t>(row) * width + col;
    fx[i] = static_cast<float>(x);
    fy[i] = static_cast<float>(y);
  }
};

/// Map whose entries are the output pixel grid itself, sized for a src_h x src_w source.
CoordinateMap identity_map(int height, int width);

inline double to_normalized(double pixel, int extent) noexcept {
  return 2.0 * pixel / (extent - 1) - 1.0;
}
inline double from_normalized(double n, int extent) noexcept {
  return (n + 1.0) * 0.5 * (extent - 1);
}

/// Bilinear resampling through a coordinate map. Output size is the map size.
Image remap(const Image& image, const CoordinateMap& map);

/// Bilinear resize with pixel-centre alignment.
Image resize_bilinear(const Image& image, int new_height, int new_width);

struct RemapResult {
  CoordinateMap map;
  BeamDescriptor beam;
};

/**
 * Linear to curvilinear remapping with radius factor rho >= 1.
 *
 * The new sector has bottom radius rho * (y3 - y1), its apex on the beam's
 * midline and top vertices where the lateral edges cross the original top
 * row. Angles across the sector map linearly onto the source columns
 * x3..x4 and radii r_t..r_b map linearly onto the source rows y1..y3. For a
 * centred beam filling the whole raster this is exactly the normalized
 * angle / normalized radius pair of the reference construction.
 */
RemapResult linear_to_convex_map(const BeamDescriptor& beam, double rho, int height, int width);

/**
 * Convex to linear remapping with width fraction omega in (0, 1].
 *
 * The output rectangle spans x0 -/+ omega * width / 2 horizontally and
 * y1..y0 + r_b vertically. Columns map linearly onto the sector angle and
 * rows onto the radius between the top boundary and r_b. The top boundary
 * is the arc |p0 - p1| for curvilinear beams and the line y = y1 for phased
 * arrays.
 */
RemapResult convex_to_linear_map(const BeamDescriptor& beam, double omega, int height, int width);

/**
 * Convexity change. w_prime is the new top width as a fraction of the bottom
 * width, so the top vertices are scaled about x0 by
 * s = w_prime * (x4 - x3) / (x2 - x1); the bottom vertices stay put and the
 * apex moves to the intersection of the new lateral edges.
 */
RemapResult convexity_change_map(const BeamDescriptor& beam, double w_prime, int height, int width);

struct BeamImage {
  Image image;
  BeamDescriptor beam;
};

/**
 * Probe type change with explicit parameters: linear beams become
 * curvilinear with radius factor rho, convex beams become linear with width
 * fraction omega. The output is masked to the new beam. When the beam carries
 * an original_aspect different from the raster ratio, the remap runs on a
 * copy resized to that aspect and the result is resized back.
 */
BeamImage probe_type_change(const Image& image, const BeamDescriptor& beam, double rho,
                            double omega);

/// Default draw ranges for the probe type change.
struct ProbeChangeRanges {
  double rho_lo = 1.0;
  double rho_hi = 2.0;
  double omega_lo = 0.7;
  double omega_hi = 0.95;
};

/// Draws rho then omega (two uniforms, both always consumed) and applies the change.
BeamImage probe_type_change(const Image& image, const BeamDescriptor& beam, RngStream& stream,
                            const ProbeChangeRanges& ranges = {});

/// Convexity change applied to an image, masked to the new beam. Linear beams pass through.
BeamImage convexity_change(const Image& image, const BeamDescriptor& beam, double w_prime);

/// Zoom map about a centre point: source = centre + d * (target - centre).
CoordinateMap zoom_map(Point2 centre, double d, int height, int width);

/**
 * Depth change: zoom by d about the image centre (linear beams) or p0
 * (convex beams), then re-mask so the beam silhouette is unchanged.
 * d > 1 zooms out, d < 1 zooms in.
 */
Image depth_change(const Image& image, const BeamDescriptor& beam, double d);

}  // namespace usaug

#endif  // USAUG_GEOMETRY_HPP
