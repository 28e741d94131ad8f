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

#ifndef USAUG_RNG_HPP
#define USAUG_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>

namespace usaug {

/**
 * Deterministic random stream keyed by (master_seed, image_id, view_id).
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. Distributions are implemented here rather than taken from
 * <random> because the standard distributions are implementation-defined,
 * and outputs must be identical across toolchains.
 *
 * Every draw method consumes a documented, fixed number of engine outputs:
 * uniform 1, uniform_int 1, bernoulli 1, normal 2, normal_pair 2.
 */
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::int64_t image_id, std::int64_t view_id);

  /// Independent child stream; the parent is not advanced.
  RngStream derive(std::uint64_t key) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi); returns lo when lo == hi, throws ParameterError when lo > hi.
  double uniform(double lo, double hi);
  /// Integer uniform on the closed range [lo, hi].
  int uniform_int(int lo, int hi);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller (cosine branch).
  double normal();
  /// Both Box-Muller outputs.
  std::pair<double, double> normal_pair();

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::int64_t image_id() const noexcept { return image_id_; }
  std::int64_t view_id() const noexcept { return view_id_; }
  std::uint64_t draw_counter() const noexcept { return draw_counter_; }

 private:
  RngStream(std::uint64_t master_seed, std::int64_t image_id, std::int64_t view_id,
            std::uint64_t key_hash);

  std::uint64_t master_seed_;
  std::int64_t image_id_;
  std::int64_t view_id_;
  std::uint64_t key_hash_;
  std::uint64_t draw_counter_ = 0;
  std::mt19937_64 engine_;
};

RngStream make_rng_stream(std::uint64_t master_seed, std::int64_t image_id,
                          std::int64_t view_id);

double sample_uniform(RngStream& stream, double lo, double hi);

/// SplitMix64 finalizer; used to derive seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace usaug

#endif  // USAUG_RNG_HPP
