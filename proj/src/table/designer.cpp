#include "qtune/table/designer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtune/codec/zigzag.hpp"
#include "qtune/error.hpp"
#include "qtune/freq/analysis.hpp"

namespace qtune {

void PlmParams::validate() const {
  if (!(t1 < t2)) {
    throw Error(ErrorKind::kInvalidParams, "PLM thresholds need t1 < t2, got t1=" +
                                               std::to_string(t1) + " t2=" + std::to_string(t2));
  }
  if (k1 < 0 || k2 < 0 || k3 < 0) throw Error(ErrorKind::kInvalidParams, "PLM slopes must be >= 0");
  if (q_min < 1 || q_min > 255) {
    throw Error(ErrorKind::kInvalidParams, "q_min " + std::to_string(q_min) + " outside [1,255]");
  }
  for (double v : {a, b, c, k1, k2, k3, t1, t2}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidParams, "PLM parameters must be finite");
  }
}

double plm_value(double d, const PlmParams& p) {
  if (d <= p.t1) return p.a - p.k1 * d;
  if (d <= p.t2) return p.b - p.k2 * d;
  return p.c - p.k3 * d;
}

QuantTable derive_plm_table(const std::array<double, 64>& stddev, const PlmParams& params) {
  params.validate();
  std::array<int, kBlockArea> q{};
  for (int i = 0; i < kBlockArea; ++i) {
    if (!std::isfinite(stddev[i]) || stddev[i] < 0) {
      throw Error(ErrorKind::kInvalidInput, "band " + std::to_string(i) + " stddev must be finite and >= 0");
    }
    const double rounded = std::floor(plm_value(stddev[i], params) + 0.5);
    q[i] = static_cast<int>(std::clamp(rounded, static_cast<double>(params.q_min), 255.0));
  }
  return QuantTable(q);
}

PlmParams with_auto_thresholds(PlmParams params, const std::array<double, 64>& stddev) {
  const auto ranked = rank_bands(stddev);
  params.t1 = stddev[ranked[kLowBands + kMidBands]];
  params.t2 = stddev[ranked[kLowBands]];
  params.validate();
  return params;
}

QuantTable design_table(const std::array<double, 64>& stddev, const PlmParams& params,
                        const DesignOptions& options) {
  const PlmParams p = options.auto_thresholds ? with_auto_thresholds(params, stddev) : params;
  QuantTable t = derive_plm_table(stddev, p);
  if (!options.pin_dc) return t;
  auto steps = t.steps();
  steps[0] = p.q_min;
  return QuantTable(steps);
}

BandSegmentation segment_bands(const std::array<double, 64>& stddev, SegmentationMode mode) {
  std::array<int, 64> order{};
  if (mode == SegmentationMode::kMagnitude) {
    order = rank_bands(stddev);
  } else {
    order = kZigzagToNatural;
  }
  BandSegmentation s;
  s.mode = mode;
  s.lf.assign(order.begin(), order.begin() + kLowBands);
  s.mf.assign(order.begin() + kLowBands, order.begin() + kLowBands + kMidBands);
  s.hf.assign(order.begin() + kLowBands + kMidBands, order.end());
  return s;
}

const std::array<int, 64>& annex_k_base(TableKind kind) {
  static constexpr std::array<int, 64> luma = {
      16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
      14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
      18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
      49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
  static constexpr std::array<int, 64> chroma = {
      17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
      24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
      99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
      99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};
  return kind == TableKind::kLuma ? luma : chroma;
}

QuantTable standard_table(int qf, TableKind kind) {
  if (qf < 1 || qf > 100) {
    throw Error(ErrorKind::kInvalidParams, "quality factor " + std::to_string(qf) + " outside [1,100]");
  }
  const int scale = qf < 50 ? 5000 / qf : 200 - 2 * qf;
  const auto& base = annex_k_base(kind);
  std::array<int, kBlockArea> q{};
  for (int i = 0; i < kBlockArea; ++i) q[i] = std::clamp((base[i] * scale + 50) / 100, 1, 255);
  return QuantTable(q);
}

HighFrequencyRemoval rm_hf_table(const QuantTable& base, int n) {
  if (n < 0 || n > kBlockArea - 1) {
    throw Error(ErrorKind::kInvalidParams, "RM-HF count " + std::to_string(n) + " outside [0,63]");
  }
  HighFrequencyRemoval r{base, {}};
  for (int k = kBlockArea - n; k < kBlockArea; ++k) r.dropped_zigzag.push_back(k);
  return r;
}

QuantTable same_q_table(int q) {
  if (q < 1 || q > 255) {
    throw Error(ErrorKind::kInvalidParams, "SAME-Q step " + std::to_string(q) + " outside [1,255]");
  }
  return QuantTable::filled(q);
}

}  // namespace qtune
