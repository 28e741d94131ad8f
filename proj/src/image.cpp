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

#include "usaug/image.hpp"

#include <string>

#include "usaug/errors.hpp"

namespace usaug {

namespace {

void check_shape(int height, int width, int channels) {
  if (height < 2 || width < 2)
    throw ShapeError("image must be at least 2x2, got " + std::to_string(height) + "x" +
                     std::to_string(width));
  if (channels != 1 && channels != 3)
    throw ShapeError("image must have 1 or 3 channels, got " + std::to_string(channels));
}

}  // namespace

Image::Image(int height, int width, int channels, std::uint8_t fill)
    : height_(height), width_(width), channels_(channels) {
  check_shape(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Image::Image(int height, int width, int channels, std::vector<std::uint8_t> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_shape(height, width, channels);
  if (data_.size() != static_cast<std::size_t>(height) * width * channels)
    throw ShapeError("pixel buffer length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(height) + "x" + std::to_string(width) +
                     "x" + std::to_string(channels));
}

}  // namespace usaug
