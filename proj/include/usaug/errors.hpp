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

#ifndef USAUG_ERRORS_HPP
#define USAUG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace usaug {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its admissible domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A beam description is degenerate or inconsistent.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Raster dimensions do not match or are too small for an operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Unknown preset, transform identifier or parameter name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, decoded or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace usaug

#endif  // USAUG_ERRORS_HPP
