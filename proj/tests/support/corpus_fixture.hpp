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

#ifndef USAUG_TESTS_CORPUS_FIXTURE_HPP
#define USAUG_TESTS_CORPUS_FIXTURE_HPP

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <unistd.h>

#include "fixtures.hpp"
#include "usaug/corpus.hpp"
#include "usaug/png_io.hpp"

namespace usaug::testing {

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("usaug_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Beam for synthetic scan k, cycling through the three probe types.
inline BeamDescriptor corpus_beam(int k) {
  switch (k % 3) {
    case 0: return curvilinear_128();
    case 1: return linear_128();
    default: return phased_128();
  }
}

/**
 * Writes n 128x128 scans (mixed gray and RGB, textured, with bright
 * annotations outside the beam) and a manifest.json into dir.
 */
inline std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir, int n) {
  std::filesystem::create_directories(dir);
  Manifest m;
  m.base_dir = dir;
  for (int k = 0; k < n; ++k) {
    const BeamDescriptor beam = corpus_beam(k);
    Image img = textured_image(128, 128, k % 2 ? 3 : 1, 1000 + k);
    const FovMask mask = build_fov_mask(beam, 128, 128);
    for (int r = 0; r < 128; ++r)
      for (int c = 0; c < 128; ++c)
        if (!mask.at(r, c) && (r + c) % 7 == 0)
          for (int ch = 0; ch < img.channels(); ++ch) img.at(r, c, ch) = 250;
    const std::string name = "scan_" + std::to_string(k) + ".png";
    write_png(dir / name, img);
    m.entries.push_back({name, beam, {}});
  }
  const auto path = dir / "manifest.json";
  std::ofstream(path) << manifest_to_json(m);
  return path;
}

inline std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// File name to contents for every regular file in dir.
inline std::map<std::string, std::string> tree_bytes(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().filename().string()] = file_bytes(e.path());
  return out;
}

}  // namespace usaug::testing

#endif  // USAUG_TESTS_CORPUS_FIXTURE_HPP
