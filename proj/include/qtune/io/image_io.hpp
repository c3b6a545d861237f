#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qtune/raster.hpp"

namespace qtune {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Binary PGM/PPM (P5/P6) with maxval 255.
RasterImage decode_pnm(std::span<const std::uint8_t> bytes);
/// 8-bit, non-interlaced grayscale or RGB PNG.
RasterImage decode_png(std::span<const std::uint8_t> bytes);

/// Dispatches on the file signature: PNG, P5/P6, or baseline JPEG.
/// Unsupported variants throw kUnsupportedFormat naming the format.
RasterImage decode_any(std::span<const std::uint8_t> bytes);
RasterImage load_image(const std::filesystem::path& path);

/// P5 for grayscale, P6 for RGB.
std::vector<std::uint8_t> encode_pnm(const RasterImage& img);
void save_pnm(const std::filesystem::path& path, const RasterImage& img);

}  // namespace qtune
