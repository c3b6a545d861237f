#include "qtune/kernels.hpp"

#include <omp.h>

#include <string>

#include "qtune/codec/dct.hpp"
#include "qtune/codec/zigzag.hpp"
#include "qtune/error.hpp"

namespace qtune::kernels {

namespace {

void check_plane(const PlaneView& p) {
  if (p.width < 1 || p.height < 1 || p.samples.empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty plane");
  }
  if (p.samples.size() != static_cast<std::size_t>(p.width) * static_cast<std::size_t>(p.height)) {
    throw Error(ErrorKind::kInvalidInput, "plane holds " + std::to_string(p.samples.size()) +
                                              " samples, expected " + std::to_string(p.width) +
                                              "x" + std::to_string(p.height));
  }
}

void check_drop(int drop_high) {
  if (drop_high < 0 || drop_high > kBlockArea - 1) {
    throw Error(ErrorKind::kInvalidInput,
                "drop count " + std::to_string(drop_high) + " outside [0,63]");
  }
}

QuantizedBlock quantize_one(const PlaneView& p, std::size_t index, const QuantTable& table,
                            int drop_high) {
  PixelBlock pixels;
  extract_block(p.samples, p.width, p.height, index, pixels);
  QuantizedBlock q = quantize(forward_dct(pixels), table);
  drop_high_frequencies(q, drop_high);
  return q;
}

void reconstruct_one(const QuantizedBlock& block, const QuantTable& table, std::size_t index,
                     int width, int height, std::span<std::uint8_t> out) {
  place_block(to_pixels(inverse_dct(dequantize(block, table))), index, width, height, out);
}

CoeffBlock transform_one(const PlaneView& p, std::size_t index) {
  PixelBlock pixels;
  extract_block(p.samples, p.width, p.height, index, pixels);
  return forward_dct(pixels);
}

void check_reconstruct(std::span<const QuantizedBlock> blocks, int width, int height,
                       std::span<std::uint8_t> out) {
  if (width < 1 || height < 1) throw Error(ErrorKind::kInvalidInput, "empty plane");
  if (blocks.size() != block_grid(width, height).count()) {
    throw Error(ErrorKind::kInvalidInput, "block count does not match plane geometry");
  }
  if (out.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::kInvalidInput, "output plane size mismatch");
  }
}

}  // namespace

void drop_high_frequencies(QuantizedBlock& block, int drop_high) {
  for (int k = kBlockArea - drop_high; k < kBlockArea; ++k) block[kZigzagToNatural[k]] = 0;
}

namespace serial {

std::vector<CoeffBlock> transform_plane(PlaneView plane) {
  check_plane(plane);
  std::vector<CoeffBlock> out(block_grid(plane.width, plane.height).count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = transform_one(plane, i);
  return out;
}

std::vector<QuantizedBlock> quantize_plane(PlaneView plane, const QuantTable& table,
                                           int drop_high) {
  check_plane(plane);
  check_drop(drop_high);
  std::vector<QuantizedBlock> out(block_grid(plane.width, plane.height).count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = quantize_one(plane, i, table, drop_high);
  return out;
}

void reconstruct_plane(std::span<const QuantizedBlock> blocks, const QuantTable& table, int width,
                       int height, std::span<std::uint8_t> out) {
  check_reconstruct(blocks, width, height, out);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    reconstruct_one(blocks[i], table, i, width, height, out);
  }
}

void accumulate_plane(PlaneView plane, BandSet& bands) {
  check_plane(plane);
  const std::size_t n = block_grid(plane.width, plane.height).count();
  for (std::size_t i = 0; i < n; ++i) add_block(bands, transform_one(plane, i));
}

}  // namespace serial

namespace parallel {

std::vector<CoeffBlock> transform_plane(PlaneView plane) {
  check_plane(plane);
  std::vector<CoeffBlock> out(block_grid(plane.width, plane.height).count());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = transform_one(plane, static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<QuantizedBlock> quantize_plane(PlaneView plane, const QuantTable& table,
                                           int drop_high) {
  check_plane(plane);
  check_drop(drop_high);
  std::vector<QuantizedBlock> out(block_grid(plane.width, plane.height).count());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        quantize_one(plane, static_cast<std::size_t>(i), table, drop_high);
  }
  return out;
}

void reconstruct_plane(std::span<const QuantizedBlock> blocks, const QuantTable& table, int width,
                       int height, std::span<std::uint8_t> out) {
  check_reconstruct(blocks, width, height, out);
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  // Tiles are disjoint, so concurrent writes never overlap.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    reconstruct_one(blocks[idx], table, idx, width, height, out);
  }
}

void accumulate_plane(PlaneView plane, BandSet& bands) {
  check_plane(plane);
  const auto n = static_cast<std::ptrdiff_t>(block_grid(plane.width, plane.height).count());
  std::vector<BandSet> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    BandSet& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      add_block(local, transform_one(plane, static_cast<std::size_t>(i)));
    }
  }
  for (const auto& p : partial) merge_into(bands, p);
}

}  // namespace parallel

}  // namespace qtune::kernels
