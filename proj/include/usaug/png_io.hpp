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

#ifndef USAUG_PNG_IO_HPP
#define USAUG_PNG_IO_HPP

#include <filesystem>

#include "usaug/image.hpp"

namespace usaug {

/**
 * Reads an 8-bit gray or RGB image. Palette images are expanded, 16-bit
 * samples are reduced to 8 bits and alpha is dropped. Throws IoError.
 */
Image read_png(const std::filesystem::path& path);

/// Writes a gray (1 channel) or RGB (3 channel) 8-bit PNG. Throws IoError.
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace usaug

#endif  // USAUG_PNG_IO_HPP
