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

#ifndef USAUG_SPATIAL_HPP
#define USAUG_SPATIAL_HPP

#include <optional>

#include "usaug/beam.hpp"
#include "usaug/fov.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug {

struct CropParams {
  double min_area_c = 0.08;
  double max_area = 1.0;
  double aspect_lo = 0.75;
  double aspect_hi = 4.0 / 3.0;
  /// When set, the crop centre must fall inside the field of view.
  bool restrict_to_fov = false;

  void validate() const;
};

struct CropWindow {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  double area_fraction = 1.0;
  double aspect = 1.0;
};

/**
 * Draws a crop window: area fraction, aspect ratio, then the top-left corner.
 * Windows that round to nothing are re-drawn from a derived stream up to ten
 * times before falling back to the full frame. With restrict_to_fov, the
 * corner draw is repeated (also at most ten times) until the window centre
 * lies in the mask; the mask must then be provided.
 */
CropWindow sample_crop_window(int height, int width, const CropParams& params, RngStream& stream,
                              const FovMask* fov = nullptr);

/// Crops the window and resizes it back to the input size.
Image crop_resize_window(const Image& image, const CropWindow& window);

/// Moves and rescales a beam by the same crop-and-resize.
BeamDescriptor crop_resize_beam(const BeamDescriptor& beam, int height, int width,
                                const CropWindow& window);

Image crop_resize(const Image& image, const CropParams& params, RngStream& stream);

Image hflip(const Image& image);

struct AffineParams {
  double angle_deg = 0.0;
  double shift_x_frac = 0.0;
  double shift_y_frac = 0.0;

  void validate() const;
};

/**
 * Rotation by angle_deg about the image centre (positive is counter-clockwise
 * as displayed), then translation by (shift_x_frac * width, shift_y_frac * height).
 * Bilinear sampling, zero outside the source.
 */
Image rotate_shift(const Image& image, const AffineParams& params);

}  // namespace usaug

#endif  // USAUG_SPATIAL_HPP
