#pragma once

#include <array>
#include <cmath>
#include <algorithm>
#include <cstdint>

#include "qtune/codec/blocks.hpp"

namespace qtune {

/// Single-pass mean/variance accumulator (Welford update, Chan et al. merge).
struct BandAccumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const BandAccumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }

  /// Population standard deviation sqrt(m2 / count); 0 for an empty band.
  double stddev() const {
    return count == 0 ? 0.0 : std::sqrt(std::max(m2, 0.0) / static_cast<double>(count));
  }

  friend bool operator==(const BandAccumulator&, const BandAccumulator&) = default;
};

/// One accumulator per frequency band, natural order.
using BandSet = std::array<BandAccumulator, kBlockArea>;

inline void merge_into(BandSet& into, const BandSet& from) {
  for (int i = 0; i < kBlockArea; ++i) into[i].merge(from[i]);
}

inline void add_block(BandSet& bands, const CoeffBlock& coeffs) {
  for (int i = 0; i < kBlockArea; ++i) bands[i].add(coeffs[i]);
}

}  // namespace qtune
