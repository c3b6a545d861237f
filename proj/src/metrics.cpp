#include "qtune/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "qtune/codec/color.hpp"
#include "qtune/error.hpp"
#include "qtune/kernels.hpp"

namespace qtune {

double compression_rate(std::size_t reference_bytes, std::size_t candidate_bytes) {
  if (reference_bytes == 0 || candidate_bytes == 0) {
    throw Error(ErrorKind::kInvalidInput, "compression rate needs nonzero byte counts");
  }
  return static_cast<double>(reference_bytes) / static_cast<double>(candidate_bytes);
}

CompressionReport compare_sizes(std::size_t reference_bytes, std::size_t candidate_bytes) {
  return {reference_bytes, candidate_bytes, compression_rate(reference_bytes, candidate_bytes)};
}

QualityReport psnr(const RasterImage& original, const RasterImage& decoded, PsnrMode mode) {
  if (original.width() != decoded.width() || original.height() != decoded.height() ||
      original.channels() != decoded.channels()) {
    throw Error(ErrorKind::kInvalidInput, "PSNR needs images of identical geometry");
  }
  double sum = 0.0;
  std::size_t n = 0;
  auto accumulate = [&](std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
      sum += d * d;
    }
    n += a.size();
  };
  if (original.channels() == 3 && mode == PsnrMode::kLuma) {
    accumulate(luma_plane(original), luma_plane(decoded));
  } else {
    for (int c = 0; c < original.channels(); ++c) accumulate(original.plane(c), decoded.plane(c));
  }
  QualityReport r;
  r.mse = sum / static_cast<double>(n);
  if (r.mse > 0) r.psnr = 10.0 * std::log10(255.0 * 255.0 / r.mse);
  return r;
}

SparsityReport coefficient_sparsity(const RasterImage& img, const EncodeTables& tables) {
  std::vector<Plane> planes;
  if (img.channels() == 3) {
    auto ycc = color_convert_forward(img);
    for (auto& p : ycc) planes.push_back(std::move(p));
  } else {
    planes.emplace_back(img.plane(0).begin(), img.plane(0).end());
  }
  std::array<std::uint64_t, 64> zeros{};
  std::uint64_t blocks = 0;
  for (std::size_t c = 0; c < planes.size(); ++c) {
    const bool chroma = c > 0 && !tables.single_table;
    const auto q = kernels::parallel::quantize_plane({planes[c], img.width(), img.height()},
                                                     chroma ? tables.chroma : tables.luma,
                                                     tables.drop_high);
    for (const auto& b : q) {
      for (int i = 1; i < 64; ++i) zeros[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)] == 0;
    }
    blocks += q.size();
  }
  SparsityReport r;
  r.ac_coefficients = blocks * 63;
  std::uint64_t total = 0;
  for (int i = 1; i < 64; ++i) {
    total += zeros[static_cast<std::size_t>(i)];
    r.band_zero_fraction[static_cast<std::size_t>(i)] =
        static_cast<double>(zeros[static_cast<std::size_t>(i)]) / static_cast<double>(blocks);
  }
  r.zero_fraction = static_cast<double>(total) / static_cast<double>(r.ac_coefficients);
  return r;
}

SparsityReport coefficient_sparsity(const RasterImage& img, const QuantTable& table) {
  return coefficient_sparsity(img, EncodeTables{table, table, true, 0});
}

std::vector<HistogramBin> histogram(std::span<const double> samples, double bin_width) {
  if (!(bin_width > 0)) throw Error(ErrorKind::kInvalidInput, "histogram bin width must be positive");
  if (samples.empty()) throw Error(ErrorKind::kInvalidInput, "histogram of an empty selection");
  std::map<long long, std::uint64_t> counts;
  for (double v : samples) ++counts[std::llround(v / bin_width)];
  std::vector<HistogramBin> bins;
  for (long long k = counts.begin()->first; k <= counts.rbegin()->first; ++k) {
    const auto it = counts.find(k);
    bins.push_back({static_cast<double>(k) * bin_width, it == counts.end() ? 0 : it->second});
  }
  return bins;
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::string out = "bin_center,count\n";
  char line[64];
  for (const auto& b : bins) {
    std::snprintf(line, sizeof line, "%.17g,%llu\n", b.center, static_cast<unsigned long long>(b.count));
    out += line;
  }
  return out;
}

std::vector<double> band_coefficients(const RasterImage& img, int band) {
  if (band < 0 || band > 63) throw Error(ErrorKind::kInvalidInput, "band index outside [0,63]");
  const Plane y = luma_plane(img);
  const auto coeffs = kernels::parallel::transform_plane({y, img.width(), img.height()});
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c[static_cast<std::size_t>(band)]);
  return out;
}

}  // namespace qtune
