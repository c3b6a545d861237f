#pragma once

#include <array>
#include <cstdint>

#include "qtune/raster.hpp"

namespace qtune {

struct Ycc {
  std::uint8_t y, cb, cr;
  friend bool operator==(const Ycc&, const Ycc&) = default;
};

/// BT.601 full-range RGB -> YCbCr, rounded half away from zero and clamped.
Ycc rgb_to_ycc(std::uint8_t r, std::uint8_t g, std::uint8_t b);
std::array<std::uint8_t, 3> ycc_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr);

/// Converts a 3-channel RGB image into (Y, Cb, Cr) planes; kInvalidInput for
/// any other channel count.
std::array<Plane, 3> color_convert_forward(const RasterImage& img);
RasterImage color_convert_inverse(const std::array<Plane, 3>& ycc, int width, int height);

/// Luma plane of an image: the plane itself for grayscale, Y for RGB.
Plane luma_plane(const RasterImage& img);

}  // namespace qtune
