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

#include "usaug/png_io.hpp"

#include <png.h>

#include <string>
#include <vector>

#include "usaug/errors.hpp"

namespace usaug {

namespace {

struct ImageGuard {
  png_image* image;
  ~ImageGuard() { png_image_free(image); }
};

}  // namespace

Image read_png(const std::filesystem::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  ImageGuard guard{&img};
  if (!png_image_begin_read_from_file(&img, path.c_str()))
    throw IoError(path.string() + ": " + img.message);
  // Colour files stay RGB and gray files stay gray, so no conversion happens
  // for 8-bit inputs. Alpha is composited onto black.
  const bool color = (img.format & PNG_FORMAT_FLAG_COLOR) != 0;
  img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  const int width = static_cast<int>(img.width);
  const int height = static_cast<int>(img.height);
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(img));
  const png_color black{0, 0, 0};
  if (!png_image_finish_read(&img, &black, data.data(), 0, nullptr))
    throw IoError(path.string() + ": " + img.message);
  return Image(height, width, channels, std::move(data));
}

void write_png(const std::filesystem::path& path, const Image& image) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = image.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  ImageGuard guard{&img};
  if (!png_image_write_to_file(&img, path.c_str(), 0, image.data().data(), 0, nullptr))
    throw IoError(path.string() + ": " + img.message);
}

}  // namespace usaug
