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

#include "usaug/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "usaug/errors.hpp"

namespace usaug {

namespace {

std::uint64_t seed_for(std::uint64_t master, std::int64_t image, std::int64_t view,
                       std::uint64_t key_hash) {
  std::uint64_t h = mix64(master ^ 0x7573617567000001ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(image));
  h = mix64(h ^ static_cast<std::uint64_t>(view));
  return mix64(h ^ key_hash);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::int64_t image_id, std::int64_t view_id)
    : RngStream(master_seed, image_id, view_id, 0) {}

RngStream::RngStream(std::uint64_t master_seed, std::int64_t image_id, std::int64_t view_id,
                     std::uint64_t key_hash)
    : master_seed_(master_seed),
      image_id_(image_id),
      view_id_(view_id),
      key_hash_(key_hash),
      engine_(seed_for(master_seed, image_id, view_id, key_hash)) {}

RngStream RngStream::derive(std::uint64_t key) const {
  return RngStream(master_seed_, image_id_, view_id_, mix64(key_hash_ * 31 + mix64(key)));
}

std::uint64_t RngStream::next_u64() {
  ++draw_counter_;
  return engine_();
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (lo > hi) throw ParameterError("uniform: lo must not exceed hi");
  const double u = uniform();
  if (lo == hi) return lo;
  const double v = lo + u * (hi - lo);
  return v < hi ? v : std::nextafter(hi, lo);
}

int RngStream::uniform_int(int lo, int hi) {
  if (lo > hi) throw ParameterError("uniform_int: lo must not exceed hi");
  const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  auto k = static_cast<long long>(std::floor(uniform() * span));
  if (k >= static_cast<long long>(span)) k = static_cast<long long>(span) - 1;
  return static_cast<int>(lo + k);
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

double RngStream::normal() { return normal_pair().first; }

std::pair<double, double> RngStream::normal_pair() {
  // 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

RngStream make_rng_stream(std::uint64_t master_seed, std::int64_t image_id,
                          std::int64_t view_id) {
  return RngStream(master_seed, image_id, view_id);
}

double sample_uniform(RngStream& stream, double lo, double hi) { return stream.uniform(lo, hi); }

}  // namespace usaug
