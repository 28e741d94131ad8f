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

#include "usaug/photometric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "usaug/errors.hpp"

namespace usaug {

namespace {

double clamp255(double v) noexcept { return std::clamp(v, 0.0, 255.0); }

void check_mask(const Image& image, const FovMask& mask) {
  if (image.height() != mask.height() || image.width() != mask.width())
    throw ShapeError("mask and image dimensions differ");
}

struct Rgb {
  double r, g, b;
};

// HSV with h in [0, 1), s and v in [0, 1]; rgb in [0, 255].
void rgb_to_hsv(const Rgb& c, double& h, double& s, double& v) noexcept {
  const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    h = 0.0;
    return;
  }
  if (mx == r)
    h = (g - b) / d;
  else if (mx == g)
    h = 2.0 + (b - r) / d;
  else
    h = 4.0 + (r - g) / d;
  h /= 6.0;
  h -= std::floor(h);
}

Rgb hsv_to_rgb(double h, double s, double v) noexcept {
  const double hh = (h - std::floor(h)) * 6.0;
  const int i = std::min(static_cast<int>(hh), 5);
  const double f = hh - i;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  double r = v, g = t, b = p;
  switch (i) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  return {r * 255.0, g * 255.0, b * 255.0};
}

Image from_buffer(const Image& like, const std::vector<double>& buf) {
  Image out(like.height(), like.width(), like.channels());
  auto dst = out.data();
  for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = saturate_u8(buf[i]);
  return out;
}

}  // namespace

Image gamma_correct(const Image& image, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  std::array<std::uint8_t, 256> lut{};
  for (int i = 0; i < 256; ++i) lut[i] = saturate_u8(255.0 * std::pow(i / 255.0, gamma));
  Image out = image;
  for (auto& v : out.data()) v = lut[v];
  return out;
}

Image brightness_contrast(const Image& image, double b, double k, const FovMask& mask) {
  check_mask(image, mask);
  if (!(b > 0.0) || !(k > 0.0)) throw ParameterError("brightness and contrast factors must be positive");
  const int ch = image.channels();
  const auto src = image.data();
  const auto& bits = mask.bits();
  std::vector<double> buf(src.size());
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < bits.size(); ++p) {
    for (int c = 0; c < ch; ++c) {
      const std::size_t i = p * ch + c;
      buf[i] = clamp255(b * src[i]);
      if (bits[p]) {
        sum += buf[i];
        ++n;
      }
    }
  }
  const double mean = n ? sum / static_cast<double>(n) : 0.0;
  for (std::size_t p = 0; p < bits.size(); ++p)
    for (int c = 0; c < ch; ++c) {
      const std::size_t i = p * ch + c;
      buf[i] = bits[p] ? clamp255(mean + k * (buf[i] - mean)) : 0.0;
    }
  return from_buffer(image, buf);
}

Image color_jitter(const Image& image, double b, double k, double s, double h) {
  if (!(b > 0.0) || !(k > 0.0) || !(s > 0.0))
    throw ParameterError("colour jitter factors must be positive");
  if (!(h >= -0.5 && h <= 0.5)) throw ParameterError("hue shift must lie in [-0.5, 0.5]");
  const int ch = image.channels();
  const auto src = image.data();
  const std::size_t npx = image.pixel_count();
  std::vector<double> buf(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) buf[i] = clamp255(b * src[i]);

  auto luma_at = [&](std::size_t p) {
    return ch == 1 ? buf[p] : luma601(buf[p * 3], buf[p * 3 + 1], buf[p * 3 + 2]);
  };
  double sum = 0.0;
  for (std::size_t p = 0; p < npx; ++p) sum += luma_at(p);
  const double mean = sum / static_cast<double>(npx);
  for (auto& v : buf) v = clamp255(mean + k * (v - mean));

  if (ch == 3) {
    for (std::size_t p = 0; p < npx; ++p) {
      double* px = &buf[p * 3];
      const double gray = luma601(px[0], px[1], px[2]);
      for (int c = 0; c < 3; ++c) px[c] = clamp255(s * px[c] + (1.0 - s) * gray);
      if (h != 0.0) {
        double hue, sat, val;
        rgb_to_hsv({px[0], px[1], px[2]}, hue, sat, val);
        const Rgb o = hsv_to_rgb(hue + h, sat, val);
        px[0] = o.r;
        px[1] = o.g;
        px[2] = o.b;
      }
    }
  }
  return from_buffer(image, buf);
}

Image to_grayscale(const Image& image) {
  if (image.channels() == 1) return image;
  Image out = image;
  auto d = out.data();
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const std::uint8_t y = saturate_u8(luma601(d[p * 3], d[p * 3 + 1], d[p * 3 + 2]));
    d[p * 3] = d[p * 3 + 1] = d[p * 3 + 2] = y;
  }
  return out;
}

Image solarize(const Image& image, int threshold) {
  if (threshold < 0 || threshold > 256) throw ParameterError("solarize threshold must lie in [0, 256]");
  Image out = image;
  for (auto& v : out.data())
    if (v >= threshold) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

Image clahe(const Image& image, double clip, int tiles, const FovMask& mask, ClaheTileMode mode) {
  check_mask(image, mask);
  if (!(clip > 0.0)) throw ParameterError("CLAHE clip limit must be positive");
  if (tiles < 1) throw ParameterError("CLAHE tile count must be >= 1");
  const int h = image.height();
  const int w = image.width();
  const int ch = image.channels();
  const int tx = mode == ClaheTileMode::grid ? tiles : (w + tiles - 1) / tiles;
  const int ty = mode == ClaheTileMode::grid ? tiles : (h + tiles - 1) / tiles;
  if (w < tx || h < ty) throw ShapeError("image is smaller than the CLAHE tile grid");

  const auto src = image.data();
  std::vector<double> luma(image.pixel_count());
  std::vector<std::uint8_t> level(image.pixel_count());
  for (std::size_t p = 0; p < luma.size(); ++p) {
    luma[p] = ch == 1 ? src[p] : luma601(src[p * 3], src[p * 3 + 1], src[p * 3 + 2]);
    level[p] = saturate_u8(luma[p]);
  }

  std::vector<int> xs(tx + 1), ys(ty + 1);
  for (int i = 0; i <= tx; ++i) xs[i] = static_cast<int>(static_cast<long long>(i) * w / tx);
  for (int j = 0; j <= ty; ++j) ys[j] = static_cast<int>(static_cast<long long>(j) * h / ty);

  // luts[(j * tx + i) * 256 + v] is the equalized level of v in tile (j, i).
  std::vector<double> luts(static_cast<std::size_t>(tx) * ty * 256);
  for (int j = 0; j < ty; ++j) {
    for (int i = 0; i < tx; ++i) {
      std::array<double, 256> hist{};
      for (int r = ys[j]; r < ys[j + 1]; ++r)
        for (int c = xs[i]; c < xs[i + 1]; ++c) hist[level[std::size_t(r) * w + c]] += 1.0;
      const double area = static_cast<double>(ys[j + 1] - ys[j]) * (xs[i + 1] - xs[i]);
      const double limit = std::max(1.0, clip * area / 256.0);
      double excess = 0.0;
      for (auto& v : hist) {
        if (v > limit) {
          excess += v - limit;
          v = limit;
        }
      }
      const double bonus = excess / 256.0;
      double* lut = &luts[(std::size_t(j) * tx + i) * 256];
      double cdf = 0.0;
      for (int v = 0; v < 256; ++v) {
        cdf += hist[v] + bonus;
        lut[v] = cdf * 255.0 / area;
      }
    }
  }

  // Tile-centre interpolation coordinates along one axis.
  auto locate = [](const std::vector<int>& edges, int n, int pos, int& lo, int& hi, double& t) {
    auto centre = [&](int k) { return 0.5 * (edges[k] + edges[k + 1] - 1); };
    if (pos <= centre(0)) {
      lo = hi = 0;
      t = 0.0;
      return;
    }
    if (pos >= centre(n - 1)) {
      lo = hi = n - 1;
      t = 0.0;
      return;
    }
    int k = 0;
    while (k + 1 < n && centre(k + 1) <= pos) ++k;
    lo = k;
    hi = k + 1;
    t = (pos - centre(k)) / (centre(k + 1) - centre(k));
  };

  std::vector<int> col_lo(w), col_hi(w);
  std::vector<double> col_t(w);
  for (int c = 0; c < w; ++c) locate(xs, tx, c, col_lo[c], col_hi[c], col_t[c]);

  Image out(h, w, ch);
  auto dst = out.data();
  const auto& bits = mask.bits();
  for (int r = 0; r < h; ++r) {
    int rlo, rhi;
    double rt;
    locate(ys, ty, r, rlo, rhi, rt);
    for (int c = 0; c < w; ++c) {
      const std::size_t p = std::size_t(r) * w + c;
      if (!bits[p]) continue;
      const int v = level[p];
      auto at = [&](int j, int i) { return luts[(std::size_t(j) * tx + i) * 256 + v]; };
      const double ct = col_t[c];
      const double top = at(rlo, col_lo[c]) * (1.0 - ct) + at(rlo, col_hi[c]) * ct;
      const double bot = at(rhi, col_lo[c]) * (1.0 - ct) + at(rhi, col_hi[c]) * ct;
      const double y = top * (1.0 - rt) + bot * rt;
      if (ch == 1) {
        dst[p] = saturate_u8(y);
      } else {
        const double delta = y - luma[p];
        for (int k = 0; k < 3; ++k) dst[p * 3 + k] = saturate_u8(src[p * 3 + k] + delta);
      }
    }
  }
  return out;
}

}  // namespace usaug
