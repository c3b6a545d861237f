#include "qtune/codec/entropy.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "qtune/error.hpp"

namespace qtune {

int magnitude_category(int value) {
  unsigned v = static_cast<unsigned>(std::abs(value));
  int n = 0;
  while (v != 0) {
    v >>= 1;
    ++n;
  }
  return n;
}

namespace {

// Low `category` bits of the JPEG one's-complement style magnitude code.
std::uint32_t magnitude_bits(int value, int category) {
  const int v = value < 0 ? value + (1 << category) - 1 : value;
  return static_cast<std::uint32_t>(v) & ((1u << category) - 1u);
}

}  // namespace

EntropyEncoder::EntropyEncoder(std::span<const ScanComponent> components) {
  coders_.reserve(components.size());
  for (const auto& c : components) coders_.push_back({HuffmanEncoder(c.dc), HuffmanEncoder(c.ac)});
}

void EntropyEncoder::put_bits(std::uint32_t bits, int count) {
  for (int i = count - 1; i >= 0; --i) {
    buffer_ = (buffer_ << 1) | ((bits >> i) & 1u);
    if (++buffered_ == 8) {
      const auto byte = static_cast<std::uint8_t>(buffer_);
      out_.push_back(byte);
      if (byte == 0xFF) out_.push_back(0x00);
      buffer_ = 0;
      buffered_ = 0;
    }
  }
}

void EntropyEncoder::put_symbol(const HuffmanEncoder& table, std::uint8_t symbol) {
  if (!table.has(symbol)) {
    char hex[8];
    std::snprintf(hex, sizeof hex, "0x%02X", symbol);
    throw Error(ErrorKind::kEncodingRange, std::string("Huffman table has no code for symbol ") + hex);
  }
  put_bits(table.code(symbol), table.length(symbol));
}

void EntropyEncoder::encode(std::size_t component, const ZigzagBlock& block) {
  Coder& coder = coders_.at(component);

  const int dc = block.values[0];
  const int diff = dc - coder.predictor;
  const int dc_cat = magnitude_category(diff);
  if (dc_cat > kMaxDcCategory) {
    throw Error(ErrorKind::kEncodingRange,
                "DC difference " + std::to_string(diff) + " exceeds category 11");
  }
  for (int k = 1; k < kBlockArea; ++k) {
    if (std::abs(static_cast<int>(block.values[k])) > kMaxAcMagnitude) {
      throw Error(ErrorKind::kEncodingRange, "AC coefficient " + std::to_string(block.values[k]) +
                                                 " at zig-zag position " + std::to_string(k) +
                                                 " exceeds category 10");
    }
  }
  put_symbol(coder.dc, static_cast<std::uint8_t>(dc_cat));
  if (dc_cat > 0) put_bits(magnitude_bits(diff, dc_cat), dc_cat);
  coder.predictor = dc;

  int run = 0;
  for (int k = 1; k < kBlockArea; ++k) {
    const int v = block.values[k];
    if (v == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      put_symbol(coder.ac, 0xF0);
      run -= 16;
    }
    const int cat = magnitude_category(v);
    put_symbol(coder.ac, static_cast<std::uint8_t>((run << 4) | cat));
    put_bits(magnitude_bits(v, cat), cat);
    run = 0;
  }
  if (run > 0) put_symbol(coder.ac, 0x00);
}

std::vector<std::uint8_t> EntropyEncoder::finish() {
  if (buffered_ > 0) put_bits((1u << (8 - buffered_)) - 1u, 8 - buffered_);
  return std::move(out_);
}

EntropyDecoder::EntropyDecoder(std::span<const std::uint8_t> data,
                               std::span<const ScanComponent> components, std::size_t base_offset)
    : data_(data), base_offset_(base_offset) {
  coders_.reserve(components.size());
  for (const auto& c : components) coders_.push_back({HuffmanDecoder(c.dc), HuffmanDecoder(c.ac)});
}

int EntropyDecoder::next_bit() {
  if (bits_left_ == 0) {
    if (pos_ >= data_.size()) {
      throw Error(ErrorKind::kCorruptStream, "scan data truncated", base_offset_ + pos_);
    }
    std::uint8_t b = data_[pos_];
    if (b == 0xFF) {
      if (pos_ + 1 >= data_.size()) {
        throw Error(ErrorKind::kCorruptStream, "scan data truncated", base_offset_ + pos_);
      }
      const std::uint8_t next = data_[pos_ + 1];
      if (next >= 0xD0 && next <= 0xD7) {
        throw Error(ErrorKind::kUnsupportedFeature, "restart marker RST" +
                                                        std::to_string(next - 0xD0) +
                                                        " inside scan at byte " +
                                                        std::to_string(base_offset_ + pos_));
      }
      if (next != 0x00) {
        throw Error(ErrorKind::kCorruptStream, "unstuffed marker inside scan",
                    base_offset_ + pos_);
      }
      pos_ += 2;
    } else {
      pos_ += 1;
    }
    byte_ = b;
    bits_left_ = 8;
  }
  --bits_left_;
  return (byte_ >> bits_left_) & 1;
}

int EntropyDecoder::receive(int count) {
  int v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | next_bit();
  // extend: values with a leading 0 bit are negative
  if (count > 0 && v < (1 << (count - 1))) v -= (1 << count) - 1;
  return v;
}

ZigzagBlock EntropyDecoder::decode(std::size_t component) {
  Coder& coder = coders_.at(component);
  auto bit = [this] { return next_bit(); };
  ZigzagBlock block;

  const std::size_t start = base_offset_ + pos_;
  const int dc_cat = coder.dc.decode(bit);
  if (dc_cat < 0) throw Error(ErrorKind::kCorruptStream, "invalid DC Huffman code", start);
  if (dc_cat > kMaxDcCategory) {
    throw Error(ErrorKind::kCorruptStream, "DC category out of range", start);
  }
  coder.predictor += receive(dc_cat);
  block.values[0] = static_cast<std::int16_t>(coder.predictor);

  for (int k = 1; k < kBlockArea;) {
    const int rs = coder.ac.decode(bit);
    if (rs < 0) {
      throw Error(ErrorKind::kCorruptStream, "invalid AC Huffman code", base_offset_ + pos_);
    }
    const int run = rs >> 4;
    const int size = rs & 15;
    if (size == 0) {
      if (run == 15) {
        k += 16;
        if (k > kBlockArea) {
          throw Error(ErrorKind::kCorruptStream, "zero run past end of block", base_offset_ + pos_);
        }
        continue;
      }
      break;  // EOB
    }
    k += run;
    if (k >= kBlockArea) {
      throw Error(ErrorKind::kCorruptStream, "AC run past end of block", base_offset_ + pos_);
    }
    block.values[k] = static_cast<std::int16_t>(receive(size));
    ++k;
  }
  return block;
}

std::vector<std::uint8_t> entropy_encode(std::span<const ZigzagBlock> blocks,
                                         std::span<const ScanComponent> components) {
  if (components.empty()) throw Error(ErrorKind::kInvalidInput, "scan needs at least one component");
  EntropyEncoder encoder(components);
  for (std::size_t i = 0; i < blocks.size(); ++i) encoder.encode(i % components.size(), blocks[i]);
  return encoder.finish();
}

DecodedScan entropy_decode(std::span<const std::uint8_t> data,
                           std::span<const ScanComponent> components, std::size_t block_count,
                           std::size_t base_offset) {
  if (components.empty()) throw Error(ErrorKind::kInvalidInput, "scan needs at least one component");
  EntropyDecoder decoder(data, components, base_offset);
  DecodedScan out;
  out.blocks.reserve(block_count);
  for (std::size_t i = 0; i < block_count; ++i) {
    out.blocks.push_back(decoder.decode(i % components.size()));
  }
  out.consumed = decoder.position();
  return out;
}

}  // namespace qtune
