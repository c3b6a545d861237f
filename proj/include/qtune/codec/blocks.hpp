#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace qtune {

inline constexpr int kBlockDim = 8;
inline constexpr int kBlockArea = 64;

/// Level-shifted samples of one 8x8 tile, row-major, each in [-128, 127].
using PixelBlock = std::array<std::int16_t, kBlockArea>;
/// Real DCT coefficients, natural (row-major) order; index 0 is DC.
using CoeffBlock = std::array<double, kBlockArea>;
/// Quantized coefficients c' = round(c / q), natural order.
using QuantizedBlock = std::array<std::int16_t, kBlockArea>;

/// Quantized coefficients in zig-zag scan order.
struct ZigzagBlock {
  std::array<std::int16_t, kBlockArea> values{};
  friend bool operator==(const ZigzagBlock&, const ZigzagBlock&) = default;
};

struct BlockGrid {
  int cols = 0;
  int rows = 0;
  std::size_t count() const { return static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows); }
};

BlockGrid block_grid(int width, int height);

/// Splits a plane into ceil(w/8) x ceil(h/8) level-shifted blocks in raster
/// order, padding the right and bottom edges by replicating the last
/// column/row.
std::vector<PixelBlock> partition_blocks(std::span<const std::uint8_t> plane, int width, int height);

/// Copies block `index` of the grid into `out` (level shifted, edge replicated).
void extract_block(std::span<const std::uint8_t> plane, int width, int height, std::size_t index,
                   PixelBlock& out);

/// Writes reconstructed 8-bit tiles back into a plane, cropping the padding.
void place_block(const std::array<std::uint8_t, kBlockArea>& tile, std::size_t index, int width,
                 int height, std::span<std::uint8_t> plane);

}  // namespace qtune
