#include "qtune/codec/zigzag.hpp"

namespace qtune {

ZigzagBlock zigzag(const QuantizedBlock& natural) {
  ZigzagBlock out;
  for (int k = 0; k < kBlockArea; ++k) out.values[k] = natural[kZigzagToNatural[k]];
  return out;
}

QuantizedBlock inverse_zigzag(const ZigzagBlock& scan) {
  QuantizedBlock out{};
  for (int k = 0; k < kBlockArea; ++k) out[kZigzagToNatural[k]] = scan.values[k];
  return out;
}

}  // namespace qtune
