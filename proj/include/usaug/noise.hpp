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

#ifndef USAUG_NOISE_HPP
#define USAUG_NOISE_HPP

#include <span>
#include <string_view>
#include <vector>

#include "usaug/beam.hpp"
#include "usaug/image.hpp"
#include "usaug/rng.hpp"

namespace usaug {

/// Separable Gaussian blur, unit-sum kernel, mirrored edges (no edge repeat).
Image gaussian_blur(const Image& image, int kernel, double sigma);

enum class Wavelet { db2, db5 };

std::string_view to_string(Wavelet w) noexcept;
Wavelet wavelet_from_string(std::string_view s);

/// Decomposition low-pass filter taps, in convolution order.
std::span<const double> wavelet_lowpass(Wavelet w) noexcept;

struct WaveletParams {
  Wavelet wavelet = Wavelet::db2;
  double alpha = 3.0;
  int levels = 3;
  int coarse_level = 2;
};

namespace wavelet {

struct Bands1D {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis step with half-sample symmetric extension.
/// Produces floor((n + taps - 1) / 2) coefficients per band.
Bands1D analyze(std::span<const double> signal, Wavelet w);

/// Inverse of analyze() for a signal of the given length.
std::vector<double> synthesize(std::span<const double> approx, std::span<const double> detail,
                               Wavelet w, std::size_t length);

/**
 * Birgé-Massart selection for level j (1 = finest): keep
 * floor(m0 / (coarse_level + 1 - j)^alpha) coefficients, with m0 the detail
 * count at coarse_level. Levels coarser than coarse_level keep everything.
 * Returns the soft threshold (the magnitude of the first discarded coefficient).
 */
double birge_massart_threshold(std::span<const double> coeffs, int level, int coarse_level,
                               std::size_t m0, double alpha);

}  // namespace wavelet

/**
 * Multi-level 2-D wavelet denoising: forward transform to params.levels,
 * soft thresholding of the detail coefficients with the Birgé-Massart
 * level-dependent rule, inverse transform and clamp. Each channel is
 * processed independently. Throws ShapeError when either side is shorter
 * than 2^levels.
 */
Image wavelet_denoise(const Image& image, const WaveletParams& params);

struct SpeckleParams {
  int lateral_resolution = 40;
  int axial_resolution = 80;
  int num_phasors = 8;
};

/**
 * Synthetic speckle. A lateral x axial grid of samples spans the beam,
 * Cartesian for linear beams and polar about p0 for convex ones. Each sample
 * is the magnitude of a sum of unit phasors with uniform random phases; the
 * field is normalized to mean 1, interpolated bilinearly in grid coordinates
 * and multiplied into the pixels inside the beam. Pixels outside are untouched.
 */
Image speckle(const Image& image, const BeamDescriptor& beam, const SpeckleParams& params,
              RngStream& stream);

/// Every pixel (all its channels) is multiplied by an independent Normal(1, sigma) draw.
Image gaussian_noise(const Image& image, double sigma, RngStream& stream);

/// Each pixel independently becomes 255 with probability f_salt, 0 with probability f_pepper.
Image salt_pepper(const Image& image, double f_salt, double f_pepper, RngStream& stream);

}  // namespace usaug

#endif  // USAUG_NOISE_HPP
