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

#ifndef USAUG_IMAGE_HPP
#define USAUG_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace usaug {

/**
 * 8-bit raster, row-major with interleaved channels.
 *
 * Height and width are at least 2 and there are either 1 or 3 channels.
 * The constructor rejects anything else with ShapeError.
 */
class Image {
 public:
  Image(int height, int width, int channels, std::uint8_t fill = 0);
  Image(int height, int width, int channels, std::vector<std::uint8_t> data);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int row, int col, int ch = 0) const noexcept {
    return data_[index(row, col, ch)];
  }
  std::uint8_t& at(int row, int col, int ch = 0) noexcept {
    return data_[index(row, col, ch)];
  }

  const std::uint8_t* row_ptr(int row) const noexcept {
    return data_.data() + index(row, 0, 0);
  }
  std::uint8_t* row_ptr(int row) noexcept { return data_.data() + index(row, 0, 0); }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  bool operator==(const Image& other) const = default;

 private:
  std::size_t index(int row, int col, int ch) const noexcept {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(col)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(ch);
  }

  int height_;
  int width_;
  int channels_;
  std::vector<std::uint8_t> data_;
};

/// Round to nearest and clamp into [0, 255]. NaN maps to 0.
inline std::uint8_t saturate_u8(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

/// BT.601 luma of an RGB triple, unrounded.
inline double luma601(double r, double g, double b) noexcept {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

}  // namespace usaug

#endif  // USAUG_IMAGE_HPP
