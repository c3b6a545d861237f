#pragma once

#include <array>
#include <cstdint>

#include "qtune/codec/blocks.hpp"

namespace qtune {

/// Separable orthonormal 8x8 DCT-II with JPEG scaling:
///   S(u,v) = 1/4 C(u) C(v) sum_x sum_y s(x,y) cos((2x+1)u pi/16) cos((2y+1)v pi/16)
/// where u indexes columns (x) and v rows (y); coefficient (v,u) lives at
/// natural index v*8+u.
CoeffBlock forward_dct(const PixelBlock& block);
CoeffBlock forward_dct(const std::array<double, kBlockArea>& samples);

/// Exact adjoint of forward_dct; returns real level-shifted samples.
std::array<double, kBlockArea> inverse_dct(const CoeffBlock& coeffs);

/// Rounds, clamps to [-128,127] and un-shifts real samples into 8-bit pixels.
std::array<std::uint8_t, kBlockArea> to_pixels(const std::array<double, kBlockArea>& samples);

}  // namespace qtune
