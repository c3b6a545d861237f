#include "qtune/codec/jfif.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <string>

#include "qtune/codec/color.hpp"
#include "qtune/codec/entropy.hpp"
#include "qtune/codec/zigzag.hpp"
#include "qtune/error.hpp"
#include "qtune/kernels.hpp"

namespace qtune {

namespace {

constexpr std::uint8_t kSOI = 0xD8;
constexpr std::uint8_t kEOI = 0xD9;
constexpr std::uint8_t kAPP0 = 0xE0;
constexpr std::uint8_t kDQT = 0xDB;
constexpr std::uint8_t kSOF0 = 0xC0;
constexpr std::uint8_t kDHT = 0xC4;
constexpr std::uint8_t kSOS = 0xDA;
constexpr std::uint8_t kDRI = 0xDD;

std::string marker_name(std::uint8_t m) {
  if (m >= 0xC0 && m <= 0xCF && m != kDHT && m != 0xC8 && m != 0xCC) {
    return "SOF" + std::to_string(m - 0xC0);
  }
  if (m >= 0xE0 && m <= 0xEF) return "APP" + std::to_string(m - 0xE0);
  if (m >= 0xD0 && m <= 0xD7) return "RST" + std::to_string(m - 0xD0);
  switch (m) {
    case kSOI: return "SOI";
    case kEOI: return "EOI";
    case kDQT: return "DQT";
    case kDHT: return "DHT";
    case kSOS: return "SOS";
    case kDRI: return "DRI";
    case 0xDC: return "DNL";
    case 0xCC: return "DAC";
    case 0xFE: return "COM";
    default: break;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "0xFF%02X", m);
  return buf;
}

class ByteWriter {
 public:
  void u8(int v) { out.push_back(static_cast<std::uint8_t>(v)); }
  void u16(int v) {
    u8((v >> 8) & 0xFF);
    u8(v & 0xFF);
  }
  void marker(std::uint8_t m) {
    u8(0xFF);
    u8(m);
  }
  std::vector<std::uint8_t> out;
};

void write_dqt(ByteWriter& w, const std::vector<QuantTable>& tables) {
  w.marker(kDQT);
  w.u16(2 + 65 * static_cast<int>(tables.size()));
  for (std::size_t id = 0; id < tables.size(); ++id) {
    w.u8(static_cast<int>(id));  // Pq = 0 (8-bit), Tq = id
    for (int k = 0; k < kBlockArea; ++k) w.u8(tables[id][kZigzagToNatural[k]]);
  }
}

void write_dht(ByteWriter& w, bool with_chroma) {
  struct Entry {
    int cls, id;
    const HuffmanSpec* spec;
  };
  std::vector<Entry> entries{{0, 0, &annex_k::dc_luminance()}, {1, 0, &annex_k::ac_luminance()}};
  if (with_chroma) {
    entries.push_back({0, 1, &annex_k::dc_chrominance()});
    entries.push_back({1, 1, &annex_k::ac_chrominance()});
  }
  int length = 2;
  for (const auto& e : entries) length += 17 + static_cast<int>(e.spec->symbols.size());
  w.marker(kDHT);
  w.u16(length);
  for (const auto& e : entries) {
    w.u8((e.cls << 4) | e.id);
    for (auto c : e.spec->counts) w.u8(c);
    for (auto s : e.spec->symbols) w.u8(s);
  }
}

}  // namespace

EncodedJpeg encode_image(const RasterImage& img, const QuantTable& luma, const QuantTable& chroma) {
  return encode_image(img, EncodeTables{luma, chroma});
}

EncodedJpeg encode_image(const RasterImage& img, const EncodeTables& tables) {
  if (img.channels() != 1 && img.channels() != 3) {
    throw Error(ErrorKind::kInvalidInput, "image must have 1 or 3 channels");
  }
  if (img.width() > 65535 || img.height() > 65535) {
    throw Error(ErrorKind::kUnsupportedSize,
                "JPEG frame limited to 65535 pixels per side, got " + std::to_string(img.width()) +
                    "x" + std::to_string(img.height()));
  }
  const int nc = img.channels();
  const bool two_tables = nc == 3 && !tables.single_table;

  std::vector<Plane> planes;
  if (nc == 3) {
    auto ycc = color_convert_forward(img);
    planes.assign(std::make_move_iterator(ycc.begin()), std::make_move_iterator(ycc.end()));
  } else {
    planes.emplace_back(img.plane(0).begin(), img.plane(0).end());
  }

  std::vector<QuantTable> dqt{tables.luma};
  if (two_tables) dqt.push_back(tables.chroma);

  std::vector<std::vector<QuantizedBlock>> quantized(static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c) {
    const QuantTable& table = (c > 0 && two_tables) ? tables.chroma : tables.luma;
    quantized[static_cast<std::size_t>(c)] = kernels::parallel::quantize_plane(
        {planes[static_cast<std::size_t>(c)], img.width(), img.height()}, table, tables.drop_high);
  }

  std::vector<ScanComponent> scan{{annex_k::dc_luminance(), annex_k::ac_luminance()}};
  for (int c = 1; c < nc; ++c) scan.push_back({annex_k::dc_chrominance(), annex_k::ac_chrominance()});

  EntropyEncoder encoder(scan);
  const std::size_t blocks = quantized[0].size();
  for (std::size_t i = 0; i < blocks; ++i) {
    for (int c = 0; c < nc; ++c) {
      encoder.encode(static_cast<std::size_t>(c), zigzag(quantized[static_cast<std::size_t>(c)][i]));
    }
  }
  const std::vector<std::uint8_t> data = encoder.finish();

  ByteWriter w;
  w.marker(kSOI);

  w.marker(kAPP0);
  w.u16(16);
  for (char ch : {'J', 'F', 'I', 'F', '\0'}) w.u8(ch);
  w.u8(1);  // version 1.01
  w.u8(1);
  w.u8(0);  // no density units, 1:1 aspect
  w.u16(1);
  w.u16(1);
  w.u8(0);  // no thumbnail
  w.u8(0);

  write_dqt(w, dqt);

  w.marker(kSOF0);
  w.u16(8 + 3 * nc);
  w.u8(8);
  w.u16(img.height());
  w.u16(img.width());
  w.u8(nc);
  for (int c = 0; c < nc; ++c) {
    w.u8(c + 1);
    w.u8(0x11);
    w.u8(c > 0 && two_tables ? 1 : 0);
  }

  write_dht(w, nc == 3);

  w.marker(kSOS);
  w.u16(6 + 2 * nc);
  w.u8(nc);
  for (int c = 0; c < nc; ++c) {
    w.u8(c + 1);
    w.u8(c == 0 ? 0x00 : 0x11);
  }
  w.u8(0);   // Ss
  w.u8(63);  // Se
  w.u8(0);   // Ah/Al

  w.out.insert(w.out.end(), data.begin(), data.end());
  w.marker(kEOI);
  return {std::move(w.out)};
}

namespace {

class Parser {
 public:
  explicit Parser(std::span<const std::uint8_t> file) : file_(file) {}

  DecodedCoefficients run() {
    if (file_.size() < 2 || file_[0] != 0xFF || file_[1] != kSOI) {
      throw Error(ErrorKind::kCorruptStream, "missing SOI marker", 0);
    }
    pos_ = 2;
    bool scanned = false;
    while (true) {
      if (pos_ >= file_.size()) {
        throw Error(ErrorKind::kCorruptStream, "missing EOI marker", pos_);
      }
      const std::size_t at = pos_;
      const std::uint8_t m = read_marker();
      if (m == kEOI) {
        if (!scanned) throw Error(ErrorKind::kUnsupportedFeature, "EOI before any SOS marker");
        return std::move(out_);
      }
      if (m == kSOI) throw Error(ErrorKind::kUnsupportedFeature, "duplicate SOI marker");
      if (m >= 0xD0 && m <= 0xD7) {
        throw Error(ErrorKind::kUnsupportedFeature, marker_name(m) + " restart marker not supported");
      }
      const std::size_t len = read_u16();
      if (len < 2) throw Error(ErrorKind::kCorruptStream, "segment length below 2", at);
      if (pos_ - 2 + len > file_.size()) {
        throw Error(ErrorKind::kCorruptStream, marker_name(m) + " segment truncated", at);
      }
      const std::span<const std::uint8_t> body = file_.subspan(pos_, len - 2);
      const std::size_t body_offset = pos_;
      pos_ += len - 2;

      if ((m >= 0xE0 && m <= 0xEF) || m == 0xFE) continue;
      switch (m) {
        case kDQT: parse_dqt(body, body_offset); break;
        case kDHT: parse_dht(body, body_offset); break;
        case kSOF0: parse_sof(body, body_offset); break;
        case kDRI:
          if (body.size() != 2) throw Error(ErrorKind::kCorruptStream, "bad DRI length", at);
          if ((body[0] << 8 | body[1]) != 0) {
            throw Error(ErrorKind::kUnsupportedFeature, "DRI restart intervals not supported");
          }
          break;
        case kSOS:
          if (scanned) throw Error(ErrorKind::kUnsupportedFeature, "multiple SOS scans not supported");
          parse_sos_and_scan(body, body_offset);
          scanned = true;
          break;
        default:
          if (m >= 0xC1 && m <= 0xCF) {
            std::string what = marker_name(m);
            if (m == 0xC2 || m == 0xC6 || m == 0xCA || m == 0xCE) what += " (progressive)";
            throw Error(ErrorKind::kUnsupportedFeature, what + " frames not supported");
          }
          throw Error(ErrorKind::kUnsupportedFeature, "marker " + marker_name(m) + " not supported");
      }
    }
  }

 private:
  std::uint8_t read_marker() {
    if (file_[pos_] != 0xFF) {
      throw Error(ErrorKind::kCorruptStream, "expected marker", pos_);
    }
    while (pos_ < file_.size() && file_[pos_] == 0xFF) ++pos_;  // fill bytes
    if (pos_ >= file_.size()) throw Error(ErrorKind::kCorruptStream, "truncated marker", pos_);
    return file_[pos_++];
  }

  std::size_t read_u16() {
    if (pos_ + 2 > file_.size()) throw Error(ErrorKind::kCorruptStream, "truncated segment", pos_);
    const std::size_t v = static_cast<std::size_t>(file_[pos_]) << 8 | file_[pos_ + 1];
    pos_ += 2;
    return v;
  }

  void parse_dqt(std::span<const std::uint8_t> b, std::size_t off) {
    std::size_t i = 0;
    while (i < b.size()) {
      const int pq = b[i] >> 4, tq = b[i] & 15;
      if (pq != 0) throw Error(ErrorKind::kUnsupportedFeature, "DQT with 16-bit precision");
      if (tq > 3) throw Error(ErrorKind::kCorruptStream, "DQT table id above 3", off + i);
      if (i + 65 > b.size()) throw Error(ErrorKind::kCorruptStream, "DQT table truncated", off + i);
      std::array<int, kBlockArea> natural{};
      for (int k = 0; k < kBlockArea; ++k) {
        natural[kZigzagToNatural[k]] = b[i + 1 + static_cast<std::size_t>(k)];
        if (natural[kZigzagToNatural[k]] == 0) {
          throw Error(ErrorKind::kCorruptStream, "zero quantization step in DQT", off + i + 1 + k);
        }
      }
      quant_[static_cast<std::size_t>(tq)] = QuantTable(natural);
      i += 65;
    }
  }

  void parse_dht(std::span<const std::uint8_t> b, std::size_t off) {
    std::size_t i = 0;
    while (i < b.size()) {
      if (i + 17 > b.size()) throw Error(ErrorKind::kCorruptStream, "DHT table truncated", off + i);
      const int tc = b[i] >> 4, th = b[i] & 15;
      if (tc > 1 || th > 3) throw Error(ErrorKind::kCorruptStream, "bad DHT class/id", off + i);
      HuffmanSpec spec;
      std::size_t total = 0;
      for (int k = 0; k < 16; ++k) {
        spec.counts[static_cast<std::size_t>(k)] = b[i + 1 + static_cast<std::size_t>(k)];
        total += spec.counts[static_cast<std::size_t>(k)];
      }
      if (i + 17 + total > b.size()) {
        throw Error(ErrorKind::kCorruptStream, "DHT symbols truncated", off + i);
      }
      spec.symbols.assign(b.begin() + static_cast<std::ptrdiff_t>(i + 17),
                          b.begin() + static_cast<std::ptrdiff_t>(i + 17 + total));
      spec.validate();
      (tc == 0 ? dc_ : ac_)[static_cast<std::size_t>(th)] = std::move(spec);
      i += 17 + total;
    }
  }

  void parse_sof(std::span<const std::uint8_t> b, std::size_t off) {
    if (!out_.components.empty()) throw Error(ErrorKind::kUnsupportedFeature, "duplicate SOF0 marker");
    if (b.size() < 6) throw Error(ErrorKind::kCorruptStream, "SOF0 segment too short", off);
    if (b[0] != 8) {
      throw Error(ErrorKind::kUnsupportedFeature,
                  "SOF0 sample precision " + std::to_string(b[0]) + " not supported");
    }
    out_.height = b[1] << 8 | b[2];
    out_.width = b[3] << 8 | b[4];
    const int nc = b[5];
    if (out_.height == 0) throw Error(ErrorKind::kUnsupportedFeature, "SOF0 height 0 (DNL) not supported");
    if (out_.width == 0) throw Error(ErrorKind::kCorruptStream, "SOF0 width 0", off + 3);
    if (nc != 1 && nc != 3) {
      throw Error(ErrorKind::kUnsupportedFeature,
                  "SOF0 with " + std::to_string(nc) + " components not supported");
    }
    if (b.size() != 6 + 3 * static_cast<std::size_t>(nc)) {
      throw Error(ErrorKind::kCorruptStream, "SOF0 length inconsistent with component count", off);
    }
    for (int c = 0; c < nc; ++c) {
      const std::size_t p = 6 + 3 * static_cast<std::size_t>(c);
      FrameComponent fc{b[p], b[p + 1] >> 4, b[p + 1] & 15, b[p + 2]};
      if (fc.h_sampling != 1 || fc.v_sampling != 1) {
        throw Error(ErrorKind::kUnsupportedFeature, "subsampled component in SOF0 not supported");
      }
      if (fc.quant_table > 3) throw Error(ErrorKind::kCorruptStream, "SOF0 table id above 3", off + p);
      out_.components.push_back(fc);
    }
  }

  void parse_sos_and_scan(std::span<const std::uint8_t> b, std::size_t off) {
    if (out_.components.empty()) throw Error(ErrorKind::kUnsupportedFeature, "SOS before SOF0 marker");
    const std::size_t nc = out_.components.size();
    if (b.empty() || b[0] != nc) {
      throw Error(ErrorKind::kUnsupportedFeature, "SOS must interleave all frame components");
    }
    if (b.size() != 4 + 2 * nc) throw Error(ErrorKind::kCorruptStream, "SOS length inconsistent", off);
    std::vector<ScanComponent> scan(nc);
    std::vector<bool> seen(nc, false);
    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < nc; ++s) {
      const int id = b[1 + 2 * s];
      const int td = b[2 + 2 * s] >> 4, ta = b[2 + 2 * s] & 15;
      const auto it = std::find_if(out_.components.begin(), out_.components.end(),
                                   [&](const FrameComponent& fc) { return fc.id == id; });
      if (it == out_.components.end()) {
        throw Error(ErrorKind::kCorruptStream, "SOS references unknown component", off + 1 + 2 * s);
      }
      const auto ci = static_cast<std::size_t>(it - out_.components.begin());
      if (seen[ci] || ci != s) {
        throw Error(ErrorKind::kUnsupportedFeature, "SOS component order differs from SOF0");
      }
      seen[ci] = true;
      if (td > 3 || ta > 3 || !dc_[static_cast<std::size_t>(td)] || !ac_[static_cast<std::size_t>(ta)]) {
        throw Error(ErrorKind::kUnsupportedFeature, "SOS references a DHT table that was not defined");
      }
      scan[s] = {*dc_[static_cast<std::size_t>(td)], *ac_[static_cast<std::size_t>(ta)]};
    }
    const std::size_t tail = 1 + 2 * nc;
    if (b[tail] != 0 || b[tail + 1] != 63 || b[tail + 2] != 0) {
      throw Error(ErrorKind::kUnsupportedFeature, "SOS spectral selection is not baseline");
    }
    for (const auto& fc : out_.components) {
      const auto& q = quant_[static_cast<std::size_t>(fc.quant_table)];
      if (!q) throw Error(ErrorKind::kUnsupportedFeature, "missing DQT table " + std::to_string(fc.quant_table));
      out_.tables.push_back(*q);
    }

    const std::size_t per_component = block_grid(out_.width, out_.height).count();
    const DecodedScan decoded =
        entropy_decode(file_.subspan(pos_), scan, per_component * nc, pos_);
    out_.blocks.assign(nc, std::vector<QuantizedBlock>(per_component));
    for (std::size_t i = 0; i < decoded.blocks.size(); ++i) {
      out_.blocks[i % nc][i / nc] = inverse_zigzag(decoded.blocks[i]);
    }
    pos_ += decoded.consumed;
    // Skip any padding up to the next marker.
    while (pos_ < file_.size() && file_[pos_] != 0xFF) ++pos_;
  }

  std::span<const std::uint8_t> file_;
  std::size_t pos_ = 0;
  std::array<std::optional<QuantTable>, 4> quant_;
  std::array<std::optional<HuffmanSpec>, 4> dc_;
  std::array<std::optional<HuffmanSpec>, 4> ac_;
  DecodedCoefficients out_;
};

}  // namespace

DecodedCoefficients decode_coefficients(std::span<const std::uint8_t> file) {
  return Parser(file).run();
}

RasterImage decode_image(std::span<const std::uint8_t> file) {
  const DecodedCoefficients dc = decode_coefficients(file);
  const std::size_t nc = dc.components.size();
  std::vector<Plane> planes(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    planes[c].resize(static_cast<std::size_t>(dc.width) * static_cast<std::size_t>(dc.height));
    kernels::parallel::reconstruct_plane(dc.blocks[c], dc.tables[c], dc.width, dc.height, planes[c]);
  }
  if (nc == 1) return RasterImage(dc.width, dc.height, std::move(planes));
  return color_convert_inverse({std::move(planes[0]), std::move(planes[1]), std::move(planes[2])},
                               dc.width, dc.height);
}

StructureReport validate_structure(std::span<const std::uint8_t> file) {
  StructureReport r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.problem = std::move(why);
    return r;
  };
  if (file.size() < 4 || file[0] != 0xFF || file[1] != kSOI) return fail("file does not start with SOI");
  r.segments.push_back({kSOI, 0, 0});

  // Required order of first occurrences.
  const std::array<std::uint8_t, 6> order{kAPP0, kDQT, kSOF0, kDHT, kSOS, kEOI};
  int stage = -1;
  std::size_t pos = 2;
  int frame_components = 0;
  std::array<bool, 4> qdefined{};
  std::vector<int> frame_tables;

  while (true) {
    if (pos + 2 > file.size()) return fail("ran off the end looking for a marker");
    if (file[pos] != 0xFF) return fail("expected marker at byte " + std::to_string(pos));
    const std::uint8_t m = file[pos + 1];
    const std::size_t at = pos;
    if (m == kEOI) {
      r.segments.push_back({kEOI, at, 0});
      if (stage != static_cast<int>(order.size()) - 2) {
        return fail("EOI before " + marker_name(order[static_cast<std::size_t>(stage + 1)]));
      }
      if (at + 2 != file.size()) return fail("trailing bytes after EOI");
      r.ok = true;
      return r;
    }
    if (pos + 4 > file.size()) return fail("truncated " + marker_name(m) + " length");
    const std::size_t len = static_cast<std::size_t>(file[pos + 2]) << 8 | file[pos + 3];
    if (len < 2 || pos + 2 + len > file.size()) {
      return fail(marker_name(m) + " length " + std::to_string(len) + " exceeds file");
    }
    r.segments.push_back({m, at, len});
    const auto body = file.subspan(pos + 4, len - 2);

    const auto it = std::find(order.begin(), order.end(), m);
    if (it == order.end()) return fail("unexpected marker " + marker_name(m));
    const int idx = static_cast<int>(it - order.begin());
    if (idx == stage) {
      if (m != kDQT && m != kDHT) return fail("duplicate " + marker_name(m));
    } else if (idx < stage) {
      return fail(marker_name(m) + " out of order");
    } else if (idx > stage + 1) {
      return fail("missing " + marker_name(order[static_cast<std::size_t>(stage + 1)]) +
                  " before " + marker_name(m));
    } else {
      stage = idx;
    }

    switch (m) {
      case kAPP0: {
        static constexpr std::array<std::uint8_t, 5> jfif{'J', 'F', 'I', 'F', 0};
        if (len != 16) return fail("APP0 length " + std::to_string(len) + ", expected 16");
        if (!std::equal(jfif.begin(), jfif.end(), body.begin())) return fail("APP0 is not JFIF");
        if (body[5] != 1 || body[6] != 1) return fail("JFIF version is not 1.01");
        if (body[12] != 0 || body[13] != 0) return fail("JFIF thumbnail present");
        break;
      }
      case kDQT: {
        if ((len - 2) % 65 != 0 || len == 2) return fail("DQT length not a multiple of 65");
        for (std::size_t i = 0; i < body.size(); i += 65) {
          if ((body[i] >> 4) != 0) return fail("DQT precision is not 8-bit");
          if ((body[i] & 15) > 3) return fail("DQT id above 3");
          qdefined[body[i] & 15] = true;
          ++r.quant_tables;
        }
        break;
      }
      case kSOF0: {
        if (len < 8) return fail("SOF0 too short");
        frame_components = body[5];
        if (len != 8 + 3 * static_cast<std::size_t>(frame_components)) {
          return fail("SOF0 length inconsistent with component count");
        }
        if (body[0] != 8) return fail("SOF0 precision is not 8");
        for (int c = 0; c < frame_components; ++c) {
          const int tq = body[6 + 3 * c + 2];
          if (tq > 3 || !qdefined[static_cast<std::size_t>(tq)]) return fail("SOF0 references undefined DQT");
          frame_tables.push_back(tq);
        }
        break;
      }
      case kDHT: {
        std::size_t i = 0;
        while (i < body.size()) {
          if (i + 17 > body.size()) return fail("DHT table header truncated");
          std::size_t total = 0;
          for (int k = 0; k < 16; ++k) total += body[i + 1 + static_cast<std::size_t>(k)];
          i += 17 + total;
          ++r.huffman_tables;
        }
        if (i != body.size()) return fail("DHT length inconsistent with code counts");
        break;
      }
      case kSOS: {
        if (body.empty() || body[0] != frame_components) return fail("SOS component count differs from SOF0");
        if (len != 6 + 2 * static_cast<std::size_t>(frame_components)) return fail("SOS length inconsistent");
        // Entropy-coded data runs to the first non-stuffed marker.
        std::size_t p = pos + 2 + len;
        const std::size_t start = p;
        while (p + 1 < file.size() && !(file[p] == 0xFF && file[p + 1] != 0x00)) ++p;
        if (p + 1 >= file.size()) return fail("scan data not terminated by a marker");
        r.scan_bytes = p - start;
        pos = p;
        continue;
      }
      default: break;
    }
    pos += 2 + len;
  }
}

}  // namespace qtune
