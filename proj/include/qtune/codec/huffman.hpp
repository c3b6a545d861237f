#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qtune {

/// Huffman table as carried by a DHT segment: code counts per length 1..16
/// and the symbols in code order.
struct HuffmanSpec {
  std::array<std::uint8_t, 16> counts{};
  std::vector<std::uint8_t> symbols;

  /// Throws kCorruptStream if counts and symbols disagree or the lengths
  /// overflow the code space.
  void validate() const;

  friend bool operator==(const HuffmanSpec&, const HuffmanSpec&) = default;
};

/// Typical tables from ITU-T T.81 Annex K.3.
namespace annex_k {
const HuffmanSpec& dc_luminance();
const HuffmanSpec& ac_luminance();
const HuffmanSpec& dc_chrominance();
const HuffmanSpec& ac_chrominance();
}  // namespace annex_k

class HuffmanEncoder {
 public:
  explicit HuffmanEncoder(const HuffmanSpec& spec);

  bool has(std::uint8_t symbol) const { return length_[symbol] != 0; }
  std::uint16_t code(std::uint8_t symbol) const { return code_[symbol]; }
  int length(std::uint8_t symbol) const { return length_[symbol]; }

 private:
  std::array<std::uint16_t, 256> code_{};
  std::array<std::uint8_t, 256> length_{};
};

/// Canonical decoder using the mincode/maxcode/valptr procedure of T.81 F.2.2.3.
class HuffmanDecoder {
 public:
  explicit HuffmanDecoder(const HuffmanSpec& spec);

  /// `next_bit` returns the next bit of the stream; -1 means no code matched.
  template <typename NextBit>
  int decode(NextBit&& next_bit) const {
    int code = 0;
    for (int len = 1; len <= 16; ++len) {
      code = (code << 1) | next_bit();
      if (maxcode_[len] >= 0 && code <= maxcode_[len]) {
        return symbols_[static_cast<std::size_t>(valptr_[len] + code - mincode_[len])];
      }
    }
    return -1;
  }

 private:
  std::array<int, 17> mincode_{};
  std::array<int, 17> maxcode_{};
  std::array<int, 17> valptr_{};
  std::vector<std::uint8_t> symbols_;
};

}  // namespace qtune
