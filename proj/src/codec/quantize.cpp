#include "qtune/codec/quantize.hpp"

#include <cmath>
#include <string>

#include "qtune/error.hpp"

namespace qtune {

QuantTable::QuantTable(const std::array<int, kBlockArea>& natural) : steps_(natural) {
  for (int i = 0; i < kBlockArea; ++i) {
    if (steps_[i] < 1 || steps_[i] > 255) {
      throw Error(ErrorKind::kInvalidInput, "quantization step " + std::to_string(steps_[i]) +
                                                " at band " + std::to_string(i) +
                                                " outside [1,255]");
    }
  }
}

QuantTable QuantTable::filled(int step) {
  std::array<int, kBlockArea> a{};
  a.fill(step);
  return QuantTable(a);
}

QuantizedBlock quantize(const CoeffBlock& coeffs, const QuantTable& table) {
  QuantizedBlock out{};
  for (int i = 0; i < kBlockArea; ++i) {
    out[i] = static_cast<std::int16_t>(std::round(coeffs[i] / table[i]));
  }
  return out;
}

CoeffBlock dequantize(const QuantizedBlock& qblock, const QuantTable& table) {
  CoeffBlock out{};
  for (int i = 0; i < kBlockArea; ++i) out[i] = static_cast<double>(qblock[i]) * table[i];
  return out;
}

}  // namespace qtune
