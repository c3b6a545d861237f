#include "qtune/codec/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtune {

namespace {

// m[k][n] = 1/2 * C(k) * cos((2n+1) k pi / 16)
struct Basis {
  std::array<std::array<double, kBlockDim>, kBlockDim> m{};
  Basis() {
    for (int k = 0; k < kBlockDim; ++k) {
      const double ck = k == 0 ? 1.0 / std::numbers::sqrt2 : 1.0;
      for (int n = 0; n < kBlockDim; ++n) {
        m[k][n] = 0.5 * ck * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
      }
    }
  }
};

const Basis& basis() {
  static const Basis b;
  return b;
}

}  // namespace

CoeffBlock forward_dct(const std::array<double, kBlockArea>& s) {
  const auto& m = basis().m;
  std::array<double, kBlockArea> tmp{};
  // tmp(y, u) = sum_x m[u][x] s(y, x)
  for (int y = 0; y < kBlockDim; ++y) {
    for (int u = 0; u < kBlockDim; ++u) {
      double acc = 0.0;
      for (int x = 0; x < kBlockDim; ++x) acc += m[u][x] * s[y * kBlockDim + x];
      tmp[y * kBlockDim + u] = acc;
    }
  }
  CoeffBlock out{};
  for (int v = 0; v < kBlockDim; ++v) {
    for (int u = 0; u < kBlockDim; ++u) {
      double acc = 0.0;
      for (int y = 0; y < kBlockDim; ++y) acc += m[v][y] * tmp[y * kBlockDim + u];
      out[v * kBlockDim + u] = acc;
    }
  }
  return out;
}

CoeffBlock forward_dct(const PixelBlock& block) {
  std::array<double, kBlockArea> s{};
  std::copy(block.begin(), block.end(), s.begin());
  return forward_dct(s);
}

std::array<double, kBlockArea> inverse_dct(const CoeffBlock& c) {
  const auto& m = basis().m;
  std::array<double, kBlockArea> tmp{};
  // tmp(y, u) = sum_v m[v][y] c(v, u)
  for (int y = 0; y < kBlockDim; ++y) {
    for (int u = 0; u < kBlockDim; ++u) {
      double acc = 0.0;
      for (int v = 0; v < kBlockDim; ++v) acc += m[v][y] * c[v * kBlockDim + u];
      tmp[y * kBlockDim + u] = acc;
    }
  }
  std::array<double, kBlockArea> out{};
  for (int y = 0; y < kBlockDim; ++y) {
    for (int x = 0; x < kBlockDim; ++x) {
      double acc = 0.0;
      for (int u = 0; u < kBlockDim; ++u) acc += m[u][x] * tmp[y * kBlockDim + u];
      out[y * kBlockDim + x] = acc;
    }
  }
  return out;
}

std::array<std::uint8_t, kBlockArea> to_pixels(const std::array<double, kBlockArea>& samples) {
  std::array<std::uint8_t, kBlockArea> out{};
  for (int i = 0; i < kBlockArea; ++i) {
    const double v = std::clamp(std::round(samples[i]), -128.0, 127.0);
    out[i] = static_cast<std::uint8_t>(static_cast<int>(v) + 128);
  }
  return out;
}

}  // namespace qtune
