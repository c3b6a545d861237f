#pragma once

#include <array>

#include "qtune/codec/blocks.hpp"

namespace qtune {

/// kZigzagToNatural[k] is the natural (row-major) index scanned at position k.
inline constexpr std::array<int, kBlockArea> kZigzagToNatural = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

inline constexpr std::array<int, kBlockArea> kNaturalToZigzag = [] {
  std::array<int, kBlockArea> inv{};
  for (int k = 0; k < kBlockArea; ++k) inv[kZigzagToNatural[k]] = k;
  return inv;
}();

ZigzagBlock zigzag(const QuantizedBlock& natural);
QuantizedBlock inverse_zigzag(const ZigzagBlock& scan);

}  // namespace qtune
