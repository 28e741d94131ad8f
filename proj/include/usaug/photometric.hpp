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

#ifndef USAUG_PHOTOMETRIC_HPP
#define USAUG_PHOTOMETRIC_HPP

#include "usaug/fov.hpp"
#include "usaug/image.hpp"

namespace usaug {

/// I' = 255 (I / 255)^gamma with unit gain.
Image gamma_correct(const Image& image, double gamma);

/**
 * Brightness multiplier b, then contrast k about the in-mask mean, then
 * multiplication by the mask so pixels outside the beam stay black.
 */
Image brightness_contrast(const Image& image, double b, double k, const FovMask& mask);

/**
 * Colour jitter in fixed order: brightness b, contrast k about the global
 * luma mean, saturation s against the luma image, hue rotation h (fraction
 * of the hue circle). Single-channel inputs behave as three equal channels,
 * so saturation and hue leave them unchanged.
 */
Image color_jitter(const Image& image, double b, double k, double s, double h);

/// BT.601 luma replicated into three channels. Single-channel images are returned as is.
Image to_grayscale(const Image& image);

/// Intensities >= threshold become 255 - I. threshold is in [0, 256].
Image solarize(const Image& image, int threshold);

/// How the CLAHE tile count is interpreted.
enum class ClaheTileMode {
  grid,   ///< tiles x tiles grid over the image
  pixels  ///< square tiles of tiles x tiles pixels
};

/**
 * Contrast-limited adaptive histogram equalization.
 *
 * Each tile's 256-bin histogram is clipped at clip * tile_area / 256 counts
 * (exactly `clip` counts for 256-pixel tiles), the excess is redistributed
 * uniformly, and the normalized CDF becomes the tile mapping. Pixel values
 * interpolate bilinearly between the mappings of the four nearest tile
 * centres. Three-channel images are equalized on BT.601 luma and the luma
 * change is added to every channel. The result is multiplied by the mask.
 * Throws ShapeError when the image is smaller than the tile grid.
 */
Image clahe(const Image& image, double clip, int tiles, const FovMask& mask,
            ClaheTileMode mode = ClaheTileMode::grid);

}  // namespace usaug

#endif  // USAUG_PHOTOMETRIC_HPP
