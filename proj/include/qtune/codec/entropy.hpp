#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qtune/codec/blocks.hpp"
#include "qtune/codec/huffman.hpp"

namespace qtune {

/// Largest admissible DC difference category and AC magnitude for 8-bit data.
inline constexpr int kMaxDcCategory = 11;
inline constexpr int kMaxAcMagnitude = 1023;

struct ScanComponent {
  HuffmanSpec dc;
  HuffmanSpec ac;
};

/// Magnitude category (bit length of |v|) used for DC differences and AC values.
int magnitude_category(int value);

/// One baseline scan encoding session. Holds the per-component DC predictors
/// and the bit buffer; not shareable across threads.
class EntropyEncoder {
 public:
  explicit EntropyEncoder(std::span<const ScanComponent> components);

  /// Appends one block; throws kEncodingRange when a value cannot be coded.
  void encode(std::size_t component, const ZigzagBlock& block);
  /// Pads the final byte with 1-bits and returns the byte-stuffed scan data.
  std::vector<std::uint8_t> finish();

 private:
  void put_bits(std::uint32_t bits, int count);
  void put_symbol(const HuffmanEncoder& table, std::uint8_t symbol);

  struct Coder {
    HuffmanEncoder dc;
    HuffmanEncoder ac;
    int predictor = 0;
  };
  std::vector<Coder> coders_;
  std::vector<std::uint8_t> out_;
  std::uint32_t buffer_ = 0;
  int buffered_ = 0;
};

/// Decoding session over byte-stuffed scan data. Offsets in errors are
/// reported relative to the enclosing file via `base_offset`.
class EntropyDecoder {
 public:
  EntropyDecoder(std::span<const std::uint8_t> data, std::span<const ScanComponent> components,
                 std::size_t base_offset = 0);

  ZigzagBlock decode(std::size_t component);
  /// Bytes consumed so far, counting stuffed bytes.
  std::size_t position() const { return pos_; }

 private:
  int next_bit();
  int receive(int count);

  struct Coder {
    HuffmanDecoder dc;
    HuffmanDecoder ac;
    int predictor = 0;
  };
  std::span<const std::uint8_t> data_;
  std::vector<Coder> coders_;
  std::size_t base_offset_;
  std::size_t pos_ = 0;
  std::uint8_t byte_ = 0;
  int bits_left_ = 0;
};

/// Encodes blocks in interleaved order: block i belongs to component
/// i % components.size() (one block per component per MCU).
std::vector<std::uint8_t> entropy_encode(std::span<const ZigzagBlock> blocks,
                                         std::span<const ScanComponent> components);

struct DecodedScan {
  std::vector<ZigzagBlock> blocks;
  std::size_t consumed = 0;
};

DecodedScan entropy_decode(std::span<const std::uint8_t> data,
                           std::span<const ScanComponent> components, std::size_t block_count,
                           std::size_t base_offset = 0);

}  // namespace qtune
