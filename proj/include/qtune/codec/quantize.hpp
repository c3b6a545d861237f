#pragma once

#include <array>
#include <span>

#include "qtune/codec/blocks.hpp"

namespace qtune {

/// 64 quantization steps in natural order, each in [1, 255].
class QuantTable {
 public:
  QuantTable() { steps_.fill(1); }
  /// Throws kInvalidInput if any entry is outside [1, 255].
  explicit QuantTable(const std::array<int, kBlockArea>& natural);

  static QuantTable filled(int step);

  int operator[](int natural_index) const { return steps_[natural_index]; }
  const std::array<int, kBlockArea>& steps() const noexcept { return steps_; }

  friend bool operator==(const QuantTable&, const QuantTable&) = default;

 private:
  std::array<int, kBlockArea> steps_;
};

/// c' = round-half-away-from-zero(c / q), elementwise.
QuantizedBlock quantize(const CoeffBlock& coeffs, const QuantTable& table);
CoeffBlock dequantize(const QuantizedBlock& qblock, const QuantTable& table);

}  // namespace qtune
