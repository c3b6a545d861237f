#include "qtune/codec/color.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtune/error.hpp"

namespace qtune {

namespace {

std::uint8_t to_sample(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

Ycc rgb_to_ycc(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double R = r, G = g, B = b;
  return {to_sample(0.299 * R + 0.587 * G + 0.114 * B),
          to_sample(128.0 - 0.168736 * R - 0.331264 * G + 0.5 * B),
          to_sample(128.0 + 0.5 * R - 0.418688 * G - 0.081312 * B)};
}

std::array<std::uint8_t, 3> ycc_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr) {
  const double Y = y, Cb = cb - 128.0, Cr = cr - 128.0;
  return {to_sample(Y + 1.402 * Cr), to_sample(Y - 0.344136 * Cb - 0.714136 * Cr),
          to_sample(Y + 1.772 * Cb)};
}

std::array<Plane, 3> color_convert_forward(const RasterImage& img) {
  if (img.channels() != 3) {
    throw Error(ErrorKind::kInvalidInput, "color conversion needs 3 channels, got " +
                                              std::to_string(img.channels()));
  }
  const std::size_t n = img.sample_count();
  std::array<Plane, 3> out{Plane(n), Plane(n), Plane(n)};
  const auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  for (std::size_t i = 0; i < n; ++i) {
    const Ycc p = rgb_to_ycc(r[i], g[i], b[i]);
    out[0][i] = p.y;
    out[1][i] = p.cb;
    out[2][i] = p.cr;
  }
  return out;
}

RasterImage color_convert_inverse(const std::array<Plane, 3>& ycc, int width, int height) {
  RasterImage img(width, height, 3);
  const std::size_t n = img.sample_count();
  for (const auto& p : ycc) {
    if (p.size() != n) throw Error(ErrorKind::kInvalidInput, "YCbCr plane size mismatch");
  }
  auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rgb = ycc_to_rgb(ycc[0][i], ycc[1][i], ycc[2][i]);
    r[i] = rgb[0];
    g[i] = rgb[1];
    b[i] = rgb[2];
  }
  return img;
}

Plane luma_plane(const RasterImage& img) {
  if (img.channels() == 1) return Plane(img.plane(0).begin(), img.plane(0).end());
  return std::move(color_convert_forward(img)[0]);
}

}  // namespace qtune
