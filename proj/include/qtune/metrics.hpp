#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtune/codec/jfif.hpp"
#include "qtune/raster.hpp"

namespace qtune {

/// reference_bytes / candidate_bytes; kInvalidInput for zero sizes.
double compression_rate(std::size_t reference_bytes, std::size_t candidate_bytes);

struct CompressionReport {
  std::size_t reference_bytes = 0;
  std::size_t candidate_bytes = 0;
  double compression_rate = 0.0;
};

CompressionReport compare_sizes(std::size_t reference_bytes, std::size_t candidate_bytes);

enum class PsnrMode { kLuma, kAllChannels };

struct QualityReport {
  double mse = 0.0;
  /// Empty when mse == 0 (lossless).
  std::optional<double> psnr;
  bool lossless() const { return !psnr.has_value(); }
};

/// PSNR against the 8-bit peak. Three-channel images are compared on luma by
/// default; grayscale images are compared directly in either mode.
QualityReport psnr(const RasterImage& original, const RasterImage& decoded,
                   PsnrMode mode = PsnrMode::kLuma);

struct SparsityReport {
  double zero_fraction = 0.0;
  /// Zero fraction per AC band, indexed by natural band index (entry 0 unused).
  std::array<double, 64> band_zero_fraction{};
  std::uint64_t ac_coefficients = 0;
};

/// Quantizes every block of every component (YCbCr for RGB) with `tables`
/// exactly as the encoder would and counts zero AC coefficients.
SparsityReport coefficient_sparsity(const RasterImage& img, const EncodeTables& tables);
SparsityReport coefficient_sparsity(const RasterImage& img, const QuantTable& table);

struct HistogramBin {
  double center = 0.0;
  std::uint64_t count = 0;
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Bins centered at integer multiples of `bin_width` (bin k covers
/// [(k-1/2)w, (k+1/2)w), assignment rounds half away from zero so the binning
/// is symmetric about 0). Sorted by center; empty bins between occupied ones
/// are kept.
std::vector<HistogramBin> histogram(std::span<const double> samples, double bin_width);
std::string histogram_csv(const std::vector<HistogramBin>& bins);

/// Un-quantized coefficients of one natural band across all luma blocks.
std::vector<double> band_coefficients(const RasterImage& img, int band);

}  // namespace qtune
