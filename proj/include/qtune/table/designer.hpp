#pragma once

#include <array>
#include <vector>

#include "qtune/codec/quantize.hpp"

namespace qtune {

/// Piece-wise linear mapping from band stddev to quantization step:
///   Q = a - k1*d   for d <= t1
///   Q = b - k2*d   for t1 < d <= t2
///   Q = c - k3*d   for d > t2
/// rounded half up and clamped to [q_min, 255].
struct PlmParams {
  double a = 255.0;
  double b = 80.0;
  double c = 240.0;
  double k1 = 9.75;
  double k2 = 1.0;
  double k3 = 3.0;
  double t1 = 20.0;
  double t2 = 60.0;
  int q_min = 5;

  /// Throws kInvalidParams unless t1 < t2, slopes >= 0 and q_min in [1,255].
  void validate() const;

  friend bool operator==(const PlmParams&, const PlmParams&) = default;
};

/// Unclamped, unrounded mapping value for one band.
double plm_value(double stddev, const PlmParams& params);

QuantTable derive_plm_table(const std::array<double, 64>& stddev, const PlmParams& params);

/// Thresholds taken from the ranked stddevs: t1 = stddev of the first HF band
/// (rank 29), t2 = stddev of the first MF band (rank 7).
PlmParams with_auto_thresholds(PlmParams params, const std::array<double, 64>& stddev);

struct DesignOptions {
  bool pin_dc = true;
  bool auto_thresholds = false;
};

/// derive_plm_table plus the table-level policies: optional automatic
/// thresholds and pinning DC to q_min.
QuantTable design_table(const std::array<double, 64>& stddev, const PlmParams& params,
                        const DesignOptions& options = {});

enum class SegmentationMode { kMagnitude, kPosition };

/// LF/MF/HF partition of the 64 natural band indices into 6/22/36 bands.
struct BandSegmentation {
  SegmentationMode mode = SegmentationMode::kMagnitude;
  std::vector<int> lf;
  std::vector<int> mf;
  std::vector<int> hf;
};

inline constexpr int kLowBands = 6;
inline constexpr int kMidBands = 22;
inline constexpr int kHighBands = 36;

BandSegmentation segment_bands(const std::array<double, 64>& stddev, SegmentationMode mode);

enum class TableKind { kLuma, kChroma };

/// Annex K base tables, natural order.
const std::array<int, 64>& annex_k_base(TableKind kind);

/// Conventional quality-factor scaling of the Annex K tables; kInvalidParams
/// outside [1, 100].
QuantTable standard_table(int qf, TableKind kind);

struct HighFrequencyRemoval {
  QuantTable table;
  std::vector<int> dropped_zigzag;  // ascending
};

/// Marks the n highest zig-zag positions for zeroing (encoder drop count n);
/// the table entries themselves are copied from `base`.
HighFrequencyRemoval rm_hf_table(const QuantTable& base, int n);

QuantTable same_q_table(int q);

}  // namespace qtune
