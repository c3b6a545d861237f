#include "qtune/io/image_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iterator>

#include "qtune/codec/jfif.hpp"
#include "qtune/error.hpp"

namespace qtune {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path.string());
}

namespace {

class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> b) : b_(b) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) {
      throw Error(ErrorKind::kParse, "malformed PNM header at byte " + std::to_string(pos_));
    }
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_++] - '0');
      if (v > 1 << 24) throw Error(ErrorKind::kParse, "PNM header value too large");
    }
    return static_cast<int>(v);
  }

  std::size_t data_start() {
    if (pos_ >= b_.size() || !std::isspace(b_[pos_])) {
      throw Error(ErrorKind::kParse, "PNM header not followed by whitespace");
    }
    return pos_ + 1;
  }

  std::size_t pos_ = 2;

 private:
  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (std::isspace(b_[pos_])) {
        ++pos_;
      } else if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  std::span<const std::uint8_t> b_;
};

std::uint32_t be32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} << 24 | std::uint32_t{p[1]} << 16 | std::uint32_t{p[2]} << 8 | p[3];
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  return pb <= pc ? b : c;
}

}  // namespace

RasterImage decode_pnm(std::span<const std::uint8_t> b) {
  if (b.size() < 2 || b[0] != 'P') throw Error(ErrorKind::kUnsupportedFormat, "not a PNM file");
  if (b[1] != '5' && b[1] != '6') {
    throw Error(ErrorKind::kUnsupportedFormat,
                std::string("PNM variant P") + static_cast<char>(b[1]) + " (only binary P5/P6)");
  }
  const int channels = b[1] == '6' ? 3 : 1;
  PnmHeader h(b);
  const int width = h.next_int();
  const int height = h.next_int();
  const int maxval = h.next_int();
  if (maxval != 255) {
    throw Error(ErrorKind::kUnsupportedFormat, "PNM maxval " + std::to_string(maxval) + " (only 8-bit)");
  }
  const std::size_t start = h.data_start();
  RasterImage img(width, height, channels);
  const std::size_t n = img.sample_count();
  if (b.size() < start + n * static_cast<std::size_t>(channels)) {
    throw Error(ErrorKind::kParse, "PNM pixel data truncated");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      img.plane(c)[i] = b[start + i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)];
    }
  }
  return img;
}

RasterImage decode_png(std::span<const std::uint8_t> b) {
  static constexpr std::array<std::uint8_t, 8> sig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (b.size() < 8 || !std::equal(sig.begin(), sig.end(), b.begin())) {
    throw Error(ErrorKind::kUnsupportedFormat, "not a PNG file");
  }
  std::size_t pos = 8;
  int width = 0, height = 0, color_type = -1;
  std::vector<std::uint8_t> idat;
  bool have_header = false, have_end = false;
  while (pos + 8 <= b.size() && !have_end) {
    const std::uint32_t len = be32(&b[pos]);
    const std::string type(reinterpret_cast<const char*>(&b[pos + 4]), 4);
    if (pos + 12 + len > b.size()) throw Error(ErrorKind::kParse, "PNG chunk " + type + " truncated");
    const std::uint8_t* data = &b[pos + 8];
    if (type == "IHDR") {
      if (len != 13) throw Error(ErrorKind::kParse, "PNG IHDR length");
      width = static_cast<int>(be32(data));
      height = static_cast<int>(be32(data + 4));
      const int depth = data[8];
      color_type = data[9];
      if (depth != 8) {
        throw Error(ErrorKind::kUnsupportedFormat, "PNG bit depth " + std::to_string(depth) + " (only 8-bit)");
      }
      if (color_type != 0 && color_type != 2) {
        throw Error(ErrorKind::kUnsupportedFormat,
                    "PNG color type " + std::to_string(color_type) + " (only gray or RGB)");
      }
      if (data[12] != 0) throw Error(ErrorKind::kUnsupportedFormat, "interlaced PNG");
      have_header = true;
    } else if (type == "IDAT") {
      idat.insert(idat.end(), data, data + len);
    } else if (type == "IEND") {
      have_end = true;
    }
    pos += 12 + len;
  }
  if (!have_header || idat.empty()) throw Error(ErrorKind::kParse, "PNG missing IHDR or IDAT");

  const int channels = color_type == 2 ? 3 : 1;
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  std::vector<std::uint8_t> raw((stride + 1) * static_cast<std::size_t>(height));
  uLongf raw_len = static_cast<uLongf>(raw.size());
  if (uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size()) {
    throw Error(ErrorKind::kParse, "PNG image data failed to inflate");
  }

  RasterImage img(width, height, channels);
  std::vector<std::uint8_t> prev(stride, 0), cur(stride);
  const auto bpp = static_cast<std::size_t>(channels);
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* row = &raw[static_cast<std::size_t>(y) * (stride + 1)];
    const int filter = row[0];
    for (std::size_t i = 0; i < stride; ++i) {
      const int x = row[1 + i];
      const int a = i >= bpp ? cur[i - bpp] : 0;
      const int up = prev[i];
      const int c = i >= bpp ? prev[i - bpp] : 0;
      int v = 0;
      switch (filter) {
        case 0: v = x; break;
        case 1: v = x + a; break;
        case 2: v = x + up; break;
        case 3: v = x + (a + up) / 2; break;
        case 4: v = x + paeth(a, up, c); break;
        default: throw Error(ErrorKind::kParse, "PNG filter type " + std::to_string(filter));
      }
      cur[i] = static_cast<std::uint8_t>(v & 0xFF);
    }
    for (int xpix = 0; xpix < width; ++xpix) {
      for (int ch = 0; ch < channels; ++ch) {
        img.at(ch, xpix, y) = cur[static_cast<std::size_t>(xpix) * bpp + static_cast<std::size_t>(ch)];
      }
    }
    std::swap(prev, cur);
  }
  return img;
}

RasterImage decode_any(std::span<const std::uint8_t> b) {
  if (b.size() >= 8 && b[0] == 0x89 && b[1] == 'P') return decode_png(b);
  if (b.size() >= 2 && b[0] == 0xFF && b[1] == 0xD8) return decode_image(b);
  if (b.size() >= 2 && b[0] == 'P') return decode_pnm(b);
  throw Error(ErrorKind::kUnsupportedFormat, "unrecognized image format");
}

RasterImage load_image(const fs::path& path) { return decode_any(read_file(path)); }

std::vector<std::uint8_t> encode_pnm(const RasterImage& img) {
  const std::string header = std::string(img.channels() == 3 ? "P6" : "P5") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.sample_count() * static_cast<std::size_t>(img.channels()));
  for (std::size_t i = 0; i < img.sample_count(); ++i) {
    for (int c = 0; c < img.channels(); ++c) out.push_back(img.plane(c)[i]);
  }
  return out;
}

void save_pnm(const fs::path& path, const RasterImage& img) { write_file(path, encode_pnm(img)); }

}  // namespace qtune
