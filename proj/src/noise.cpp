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

#include "usaug/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "usaug/errors.hpp"
#include "usaug/fov.hpp"

namespace usaug {

namespace {

constexpr std::array<double, 4> kDb2 = {
    -0.12940952255126037, 0.2241438680420134, 0.8365163037378079, 0.48296291314453416};

constexpr std::array<double, 10> kDb5 = {
    0.0033357252854737712, -0.012580751999081999, -0.006241490212798274,
    0.07757149384004572,   -0.032244869584638375, -0.24229488706638203,
    0.13842814590132074,   0.7243085284377729,    0.6038292697971896,
    0.16010239797419293};

/// Mirror index into [0, n) without repeating the edge sample.
inline int reflect101(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

/// Half-sample symmetric index into [0, n): x[-1] = x[0].
inline std::size_t reflect_half(long long i, std::size_t n) noexcept {
  const long long period = 2 * static_cast<long long>(n);
  i %= period;
  if (i < 0) i += period;
  return static_cast<std::size_t>(i < static_cast<long long>(n) ? i : period - 1 - i);
}

std::vector<double> highpass_of(std::span<const double> lo) {
  const std::size_t f = lo.size();
  std::vector<double> hi(f);
  for (std::size_t k = 0; k < f; ++k) hi[k] = (k % 2 == 0 ? -1.0 : 1.0) * lo[f - 1 - k];
  return hi;
}

struct Plane {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Plane() = default;
  Plane(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c) {}
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

struct Level2D {
  Plane lh, hl, hh;
  std::size_t rows = 0;  // size of the approximation this level was computed from
  std::size_t cols = 0;
};

// Applies a 1-D step along rows (axis 1) or columns (axis 0).
void analyze_axis(const Plane& in, int axis, Wavelet w, Plane& lo, Plane& hi) {
  const std::size_t n = axis == 1 ? in.cols : in.rows;
  const std::size_t lines = axis == 1 ? in.rows : in.cols;
  const std::size_t m = (n + wavelet_lowpass(w).size() - 1) / 2;
  lo = axis == 1 ? Plane(in.rows, m) : Plane(m, in.cols);
  hi = lo;
  std::vector<double> line(n);
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t i = 0; i < n; ++i) line[i] = axis == 1 ? in.at(l, i) : in.at(i, l);
    const auto bands = wavelet::analyze(line, w);
    for (std::size_t i = 0; i < m; ++i) {
      (axis == 1 ? lo.at(l, i) : lo.at(i, l)) = bands.approx[i];
      (axis == 1 ? hi.at(l, i) : hi.at(i, l)) = bands.detail[i];
    }
  }
}

Plane synthesize_axis(const Plane& lo, const Plane& hi, int axis, Wavelet w, std::size_t length) {
  const std::size_t m = axis == 1 ? lo.cols : lo.rows;
  const std::size_t lines = axis == 1 ? lo.rows : lo.cols;
  Plane out = axis == 1 ? Plane(lo.rows, length) : Plane(length, lo.cols);
  std::vector<double> a(m), d(m);
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = axis == 1 ? lo.at(l, i) : lo.at(i, l);
      d[i] = axis == 1 ? hi.at(l, i) : hi.at(i, l);
    }
    const auto x = wavelet::synthesize(a, d, w, length);
    for (std::size_t i = 0; i < length; ++i) (axis == 1 ? out.at(l, i) : out.at(i, l)) = x[i];
  }
  return out;
}

void soft_threshold(std::vector<double>& v, double thr) {
  if (thr <= 0.0) return;
  for (auto& c : v) {
    const double a = std::abs(c) - thr;
    c = a > 0.0 ? std::copysign(a, c) : 0.0;
  }
}

}  // namespace

Image gaussian_blur(const Image& image, int kernel, double sigma) {
  if (kernel < 1 || kernel % 2 == 0) throw ParameterError("blur kernel size must be odd and >= 1");
  if (!(sigma > 0.0)) throw ParameterError("blur sigma must be positive");
  const int radius = kernel / 2;
  std::vector<double> wts(radius + 1);
  double total = 0.0;
  for (int k = 0; k <= radius; ++k) {
    wts[k] = std::exp(-0.5 * k * k / (sigma * sigma));
    total += k == 0 ? wts[k] : 2.0 * wts[k];
  }
  for (auto& v : wts) v /= total;

  const int h = image.height();
  const int w = image.width();
  const int ch = image.channels();
  const auto src = image.data();
  std::vector<double> tmp(src.size());
  // Pairs are summed before weighting so that mirrored inputs give
  // bit-identical mirrored outputs.
  for (int r = 0; r < h; ++r) {
    const std::size_t row = std::size_t(r) * w;
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        double acc = wts[0] * src[(row + c) * ch + k];
        for (int t = 1; t <= radius; ++t) {
          const double pair = static_cast<double>(src[(row + reflect101(c - t, w)) * ch + k]) +
                              src[(row + reflect101(c + t, w)) * ch + k];
          acc += wts[t] * pair;
        }
        tmp[(row + c) * ch + k] = acc;
      }
    }
  }
  Image out(h, w, ch);
  auto dst = out.data();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        double acc = wts[0] * tmp[(std::size_t(r) * w + c) * ch + k];
        for (int t = 1; t <= radius; ++t) {
          acc += wts[t] * (tmp[(std::size_t(reflect101(r - t, h)) * w + c) * ch + k] +
                           tmp[(std::size_t(reflect101(r + t, h)) * w + c) * ch + k]);
        }
        dst[(std::size_t(r) * w + c) * ch + k] = saturate_u8(acc);
      }
    }
  }
  return out;
}

std::string_view to_string(Wavelet w) noexcept { return w == Wavelet::db2 ? "db2" : "db5"; }

Wavelet wavelet_from_string(std::string_view s) {
  if (s == "db2") return Wavelet::db2;
  if (s == "db5") return Wavelet::db5;
  throw LookupError("unknown wavelet '" + std::string(s) + "' (expected db2 or db5)");
}

std::span<const double> wavelet_lowpass(Wavelet w) noexcept {
  if (w == Wavelet::db2) return kDb2;
  return kDb5;
}

namespace wavelet {

Bands1D analyze(std::span<const double> signal, Wavelet w) {
  const auto lo = wavelet_lowpass(w);
  const auto hi = highpass_of(lo);
  const std::size_t n = signal.size();
  const std::size_t f = lo.size();
  const std::size_t m = (n + f - 1) / 2;
  Bands1D out{std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t o = 0; o < m; ++o) {
    double a = 0.0, d = 0.0;
    const long long base = 2 * static_cast<long long>(o) + 1;
    for (std::size_t j = 0; j < f; ++j) {
      const double x = signal[reflect_half(base - static_cast<long long>(j), n)];
      a += lo[j] * x;
      d += hi[j] * x;
    }
    out.approx[o] = a;
    out.detail[o] = d;
  }
  return out;
}

std::vector<double> synthesize(std::span<const double> approx, std::span<const double> detail,
                               Wavelet w, std::size_t length) {
  if (approx.size() != detail.size()) throw ShapeError("wavelet bands differ in length");
  const auto lo = wavelet_lowpass(w);
  const auto hi = highpass_of(lo);
  const long long f = static_cast<long long>(lo.size());
  const long long m = static_cast<long long>(approx.size());
  std::vector<double> x(length, 0.0);
  // Sample n is rebuilt from the coefficients o with 0 <= 2o+1-n < f, all of
  // which analyze() stores, so no boundary folding is needed.
  for (long long n = 0; n < static_cast<long long>(length); ++n) {
    double acc = 0.0;
    for (long long j = (n + 1) % 2; j < f; j += 2) {
      const long long o = (n + j - 1) / 2;
      if (o < 0 || o >= m) continue;
      acc += approx[o] * lo[j] + detail[o] * hi[j];
    }
    x[n] = acc;
  }
  return x;
}

double birge_massart_threshold(std::span<const double> coeffs, int level, int coarse_level,
                               std::size_t m0, double alpha) {
  if (level >= coarse_level || coeffs.empty()) return 0.0;
  const double keep_real = static_cast<double>(m0) / std::pow(coarse_level + 1 - level, alpha);
  const auto keep = static_cast<std::size_t>(std::floor(keep_real));
  if (keep >= coeffs.size()) return 0.0;
  std::vector<double> mags(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), mags.begin(), [](double c) { return std::abs(c); });
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(keep), mags.end(),
                   std::greater<>());
  return mags[keep];
}

}  // namespace wavelet

Image wavelet_denoise(const Image& image, const WaveletParams& params) {
  if (params.levels < 1 || params.coarse_level < 1 || params.coarse_level > params.levels)
    throw ParameterError("wavelet levels must satisfy levels >= coarse_level >= 1");
  if (!(params.alpha > 1.0)) throw ParameterError("Birgé-Massart alpha must exceed 1");
  const int h = image.height();
  const int w = image.width();
  if (params.levels >= 31 || h < (1 << params.levels) || w < (1 << params.levels))
    throw ShapeError("image is too small for the requested wavelet levels");
  const int ch = image.channels();
  const auto src = image.data();
  Image out(h, w, ch);
  auto dst = out.data();

  for (int k = 0; k < ch; ++k) {
    Plane approx(h, w);
    for (std::size_t p = 0; p < image.pixel_count(); ++p) approx.v[p] = src[p * ch + k];

    std::vector<Level2D> levels;
    for (int j = 0; j < params.levels; ++j) {
      Level2D lvl;
      lvl.rows = approx.rows;
      lvl.cols = approx.cols;
      Plane lo, hi, ll;
      analyze_axis(approx, 1, params.wavelet, lo, hi);
      analyze_axis(lo, 0, params.wavelet, ll, lvl.lh);
      analyze_axis(hi, 0, params.wavelet, lvl.hl, lvl.hh);
      levels.push_back(std::move(lvl));
      approx = std::move(ll);
    }

    const auto& ref = levels[params.coarse_level - 1];
    const std::size_t m0 = ref.lh.v.size() + ref.hl.v.size() + ref.hh.v.size();
    for (int j = 1; j <= params.levels; ++j) {
      auto& lvl = levels[j - 1];
      std::vector<double> pooled;
      pooled.reserve(lvl.lh.v.size() * 3);
      for (const Plane* b : {&lvl.lh, &lvl.hl, &lvl.hh})
        pooled.insert(pooled.end(), b->v.begin(), b->v.end());
      const double thr =
          wavelet::birge_massart_threshold(pooled, j, params.coarse_level, m0, params.alpha);
      for (Plane* b : {&lvl.lh, &lvl.hl, &lvl.hh}) soft_threshold(b->v, thr);
    }

    for (int j = params.levels - 1; j >= 0; --j) {
      const auto& lvl = levels[j];
      Plane lo = synthesize_axis(approx, lvl.lh, 0, params.wavelet, lvl.rows);
      Plane hi = synthesize_axis(lvl.hl, lvl.hh, 0, params.wavelet, lvl.rows);
      approx = synthesize_axis(lo, hi, 1, params.wavelet, lvl.cols);
    }
    for (std::size_t p = 0; p < image.pixel_count(); ++p) dst[p * ch + k] = saturate_u8(approx.v[p]);
  }
  return out;
}

Image speckle(const Image& image, const BeamDescriptor& beam, const SpeckleParams& params,
              RngStream& stream) {
  const int nl = params.lateral_resolution;
  const int na = params.axial_resolution;
  if (nl < 2 || na < 2) throw ParameterError("speckle grid needs at least 2 samples per axis");
  if (params.num_phasors < 1) throw ParameterError("speckle needs at least one phasor");
  const int h = image.height();
  const int w = image.width();
  const FovMask mask = build_fov_mask(beam, h, w);

  std::vector<double> field(std::size_t(nl) * na);
  double sum = 0.0;
  for (auto& f : field) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < params.num_phasors; ++k)
      acc += std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform());
    f = std::abs(acc);
    sum += f;
  }
  const double mean = sum / static_cast<double>(field.size());
  if (mean > 0.0)
    for (auto& f : field) f /= mean;

  // Grid coordinates: u along the lateral axis, v along the axial axis.
  const bool convex = beam.is_convex();
  const BeamDescriptor b = with_derived_apex(beam);
  const double ax = convex ? b.aspect_correction(h, w) : 1.0;
  const Point2 apex = convex ? Point2{b.p0->x * ax, b.p0->y} : Point2{};
  auto e = [ax](Point2 p) { return Point2{p.x * ax, p.y}; };
  const double phi_l = convex ? angle_from_vertical(apex, e(b.p3)) : 0.0;
  const double phi_r = convex ? angle_from_vertical(apex, e(b.p4)) : 1.0;
  const double r_t = convex ? distance(apex, e(b.p1)) : 0.0;
  const double r_b = convex ? distance(apex, e(b.p3)) : 1.0;
  const double xmin = std::min(b.p1.x, b.p3.x);
  const double xmax = std::max(b.p2.x, b.p4.x);
  const double y_top = b.p1.y;
  const double y_bot = b.p3.y;

  Image out = image;
  auto dst = out.data();
  const int ch = image.channels();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!mask.at(r, c)) continue;
      double u, v;
      if (convex) {
        const Point2 q{c * ax, static_cast<double>(r)};
        u = (angle_from_vertical(apex, q) - phi_l) / (phi_r - phi_l);
        v = (distance(apex, q) - r_t) / (r_b - r_t);
      } else {
        u = (c - xmin) / (xmax - xmin);
        v = (r - y_top) / (y_bot - y_top);
      }
      u = std::clamp(u, 0.0, 1.0) * (nl - 1);
      v = std::clamp(v, 0.0, 1.0) * (na - 1);
      const int u0 = std::min(static_cast<int>(u), nl - 2);
      const int v0 = std::min(static_cast<int>(v), na - 2);
      const double tu = u - u0;
      const double tv = v - v0;
      auto g = [&](int vi, int ui) { return field[std::size_t(vi) * nl + ui]; };
      const double top = g(v0, u0) + tu * (g(v0, u0 + 1) - g(v0, u0));
      const double bot = g(v0 + 1, u0) + tu * (g(v0 + 1, u0 + 1) - g(v0 + 1, u0));
      const double f = top + tv * (bot - top);
      const std::size_t p = std::size_t(r) * w + c;
      for (int k = 0; k < ch; ++k) dst[p * ch + k] = saturate_u8(dst[p * ch + k] * f);
    }
  }
  return out;
}

Image gaussian_noise(const Image& image, double sigma, RngStream& stream) {
  if (!(sigma >= 0.0)) throw ParameterError("noise sigma must be non-negative");
  Image out = image;
  auto d = out.data();
  const int ch = image.channels();
  const std::size_t n = image.pixel_count();
  auto apply = [&](std::size_t p, double z) {
    const double f = 1.0 + sigma * z;
    for (int k = 0; k < ch; ++k) d[p * ch + k] = saturate_u8(d[p * ch + k] * f);
  };
  std::size_t p = 0;
  for (; p + 1 < n; p += 2) {
    const auto [z0, z1] = stream.normal_pair();
    apply(p, z0);
    apply(p + 1, z1);
  }
  if (p < n) apply(p, stream.normal());
  return out;
}

Image salt_pepper(const Image& image, double f_salt, double f_pepper, RngStream& stream) {
  if (!(f_salt >= 0.0 && f_salt <= 1.0) || !(f_pepper >= 0.0 && f_pepper <= 1.0) ||
      f_salt + f_pepper > 1.0)
    throw ParameterError("salt and pepper fractions must lie in [0, 1] and sum to at most 1");
  Image out = image;
  auto d = out.data();
  const int ch = image.channels();
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const double u = stream.uniform();
    if (u < f_salt) {
      for (int k = 0; k < ch; ++k) d[p * ch + k] = 255;
    } else if (u < f_salt + f_pepper) {
      for (int k = 0; k < ch; ++k) d[p * ch + k] = 0;
    }
  }
  return out;
}

}  // namespace usaug
