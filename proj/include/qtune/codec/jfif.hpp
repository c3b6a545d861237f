#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtune/codec/blocks.hpp"
#include "qtune/codec/quantize.hpp"
#include "qtune/raster.hpp"

namespace qtune {

/// Quantization setup for one encode. Grayscale images only use `luma`.
struct EncodeTables {
  QuantTable luma;
  QuantTable chroma;
  /// Emit a single DQT table and use it for every component.
  bool single_table = false;
  /// Force the `drop_high` highest zig-zag positions to zero in every block.
  int drop_high = 0;
};

struct EncodedJpeg {
  std::vector<std::uint8_t> bytes;
  std::size_t size() const { return bytes.size(); }
};

/// Baseline sequential JFIF, no subsampling, Annex K Huffman tables.
/// Throws kUnsupportedSize above 65535 pixels per side.
EncodedJpeg encode_image(const RasterImage& img, const QuantTable& luma, const QuantTable& chroma);
EncodedJpeg encode_image(const RasterImage& img, const EncodeTables& tables);

struct FrameComponent {
  int id = 0;
  int h_sampling = 1;
  int v_sampling = 1;
  int quant_table = 0;
};

/// Entropy-decoded content of a file: per-component quantized blocks in
/// raster order (natural coefficient order) and the table each one used.
struct DecodedCoefficients {
  int width = 0;
  int height = 0;
  std::vector<FrameComponent> components;
  std::vector<QuantTable> tables;  // indexed like `components`
  std::vector<std::vector<QuantizedBlock>> blocks;
};

/// Parses markers and entropy-decodes the single scan. Only tables found in
/// the stream are used.
DecodedCoefficients decode_coefficients(std::span<const std::uint8_t> file);
RasterImage decode_image(std::span<const std::uint8_t> file);
inline RasterImage decode_image(const EncodedJpeg& jpeg) { return decode_image(jpeg.bytes); }

struct MarkerSegment {
  std::uint8_t marker = 0;
  std::size_t offset = 0;  // offset of the 0xFF byte
  std::size_t length = 0;  // segment length field, 0 for SOI/EOI
};

struct StructureReport {
  bool ok = false;
  std::string problem;
  std::vector<MarkerSegment> segments;
  int quant_tables = 0;
  int huffman_tables = 0;
  std::size_t scan_bytes = 0;
};

/// Checks the layout this encoder emits: SOI, APP0 (JFIF 1.01), DQT, SOF0,
/// DHT, SOS, entropy data, EOI, in that order, with every segment length
/// consistent with its content and EOI as the final two bytes.
StructureReport validate_structure(std::span<const std::uint8_t> file);

}  // namespace qtune
