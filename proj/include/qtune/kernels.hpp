#pragma once

// Per-plane block kernels. Every kernel has a serial reference and an OpenMP
// variant with identical results; the codec and the statistics pipeline call
// the parallel variants, tests hold them against the serial ones.

#include <cstdint>
#include <span>
#include <vector>

#include "qtune/codec/blocks.hpp"
#include "qtune/codec/quantize.hpp"
#include "qtune/freq/accumulator.hpp"

namespace qtune::kernels {

struct PlaneView {
  std::span<const std::uint8_t> samples;
  int width = 0;
  int height = 0;
};

namespace serial {

/// Partition + forward DCT of every block, raster order.
std::vector<CoeffBlock> transform_plane(PlaneView plane);

/// Partition + DCT + quantize. The `drop_high` highest zig-zag positions are
/// forced to zero in every block.
std::vector<QuantizedBlock> quantize_plane(PlaneView plane, const QuantTable& table,
                                           int drop_high = 0);

/// Dequantize + inverse DCT + round/clamp/un-shift, cropped into `out`.
void reconstruct_plane(std::span<const QuantizedBlock> blocks, const QuantTable& table, int width,
                       int height, std::span<std::uint8_t> out);

/// Folds the un-quantized coefficients of every block into `bands`.
void accumulate_plane(PlaneView plane, BandSet& bands);

}  // namespace serial

namespace parallel {

std::vector<CoeffBlock> transform_plane(PlaneView plane);
std::vector<QuantizedBlock> quantize_plane(PlaneView plane, const QuantTable& table,
                                           int drop_high = 0);
void reconstruct_plane(std::span<const QuantizedBlock> blocks, const QuantTable& table, int width,
                       int height, std::span<std::uint8_t> out);
/// Per-thread partial sums over contiguous block ranges, merged in thread order.
void accumulate_plane(PlaneView plane, BandSet& bands);

}  // namespace parallel

/// Zeroes the `drop_high` highest zig-zag positions of a natural-order block.
void drop_high_frequencies(QuantizedBlock& block, int drop_high);

}  // namespace qtune::kernels
