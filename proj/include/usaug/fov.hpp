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

#ifndef USAUG_FOV_HPP
#define USAUG_FOV_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/image.hpp"

namespace usaug {

/// Inclusive pixel bounding box.
struct PixelBox {
  int min_row = 0;
  int max_row = 0;
  int min_col = 0;
  int max_col = 0;

  int height() const noexcept { return max_row - min_row + 1; }
  int width() const noexcept { return max_col - min_col + 1; }
  bool operator==(const PixelBox&) const = default;
};

/// Per-pixel field-of-view membership.
class FovMask {
 public:
  FovMask(int height, int width, bool fill = false);
  FovMask(int height, int width, std::vector<std::uint8_t> bits);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  bool at(int row, int col) const noexcept {
    return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  void set(int row, int col, bool v) noexcept {
    bits_[static_cast<std::size_t>(row) * width_ + col] = v ? 1 : 0;
  }

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::size_t count() const noexcept;
  /// Tight bounding box of the true region; empty when no bit is set.
  std::optional<PixelBox> bounding_box() const noexcept;
  /// Sub-mask over the given box.
  FovMask cropped(const PixelBox& box) const;

  bool operator==(const FovMask&) const = default;

 private:
  int height_;
  int width_;
  std::vector<std::uint8_t> bits_;
};

/// True when the pixel centre (col, row) lies inside the beam, boundary included.
bool beam_contains(const BeamDescriptor& beam, int height, int width, double col, double row);

/**
 * Rasterize the field of view of a beam.
 *
 * Linear beams cover the quadrilateral p1 p2 p4 p3. Convex beams cover the
 * annular sector about p0 between radii |p0 - p1| and |p0 - p3| and between
 * the rays through p1 and p2. Geometry falling outside the raster is clipped.
 * Throws GeometryError when no pixel centre is covered.
 */
FovMask build_fov_mask(const BeamDescriptor& beam, int height, int width);

/// Zero every pixel outside the mask. Throws ShapeError on size mismatch.
Image apply_mask(const Image& image, const FovMask& mask);

struct PreprocessResult {
  Image image;
  BeamDescriptor beam;
  FovMask mask;
};

/// Crop image, mask and beam to the tight bounding box of the mask.
PreprocessResult crop_to_fov(const Image& image, const FovMask& mask, const BeamDescriptor& beam);

/// build_fov_mask, apply_mask and crop_to_fov in sequence.
PreprocessResult preprocess(const Image& image, const BeamDescriptor& beam);

/**
 * Preprocess, then convert convex fields of view to linear ones with a fixed
 * width fraction. When omega is empty the converted beam keeps the bottom
 * chord width of the original sector. Linear inputs are returned as preprocess().
 */
PreprocessResult preprocess_linear_only(const Image& image, const BeamDescriptor& beam,
                                        std::optional<double> omega = std::nullopt);

}  // namespace usaug

#endif  // USAUG_FOV_HPP
