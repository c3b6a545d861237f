#include "qtune/codec/blocks.hpp"

#include <algorithm>
#include <string>

#include "qtune/error.hpp"

namespace qtune {

BlockGrid block_grid(int width, int height) {
  return {(width + kBlockDim - 1) / kBlockDim, (height + kBlockDim - 1) / kBlockDim};
}

void extract_block(std::span<const std::uint8_t> plane, int width, int height, std::size_t index,
                   PixelBlock& out) {
  const BlockGrid grid = block_grid(width, height);
  const int bx = static_cast<int>(index % static_cast<std::size_t>(grid.cols)) * kBlockDim;
  const int by = static_cast<int>(index / static_cast<std::size_t>(grid.cols)) * kBlockDim;
  for (int y = 0; y < kBlockDim; ++y) {
    const int sy = std::min(by + y, height - 1);
    const std::uint8_t* row = plane.data() + static_cast<std::size_t>(sy) * width;
    for (int x = 0; x < kBlockDim; ++x) {
      const int sx = std::min(bx + x, width - 1);
      out[y * kBlockDim + x] = static_cast<std::int16_t>(row[sx] - 128);
    }
  }
}

std::vector<PixelBlock> partition_blocks(std::span<const std::uint8_t> plane, int width, int height) {
  if (plane.empty() || width < 1 || height < 1) {
    throw Error(ErrorKind::kInvalidInput, "cannot partition an empty plane");
  }
  if (plane.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::kInvalidInput, "plane size " + std::to_string(plane.size()) +
                                              " does not match " + std::to_string(width) + "x" +
                                              std::to_string(height));
  }
  const BlockGrid grid = block_grid(width, height);
  std::vector<PixelBlock> blocks(grid.count());
  for (std::size_t i = 0; i < blocks.size(); ++i) extract_block(plane, width, height, i, blocks[i]);
  return blocks;
}

void place_block(const std::array<std::uint8_t, kBlockArea>& tile, std::size_t index, int width,
                 int height, std::span<std::uint8_t> plane) {
  const BlockGrid grid = block_grid(width, height);
  const int bx = static_cast<int>(index % static_cast<std::size_t>(grid.cols)) * kBlockDim;
  const int by = static_cast<int>(index / static_cast<std::size_t>(grid.cols)) * kBlockDim;
  const int w = std::min(kBlockDim, width - bx);
  const int h = std::min(kBlockDim, height - by);
  for (int y = 0; y < h; ++y) {
    std::copy_n(tile.data() + y * kBlockDim, w,
                plane.data() + static_cast<std::size_t>(by + y) * width + bx);
  }
}

}  // namespace qtune
