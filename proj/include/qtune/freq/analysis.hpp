#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qtune/freq/accumulator.hpp"
#include "qtune/io/corpus.hpp"
#include "qtune/raster.hpp"

namespace qtune {

enum class ChannelMode { kLumaOnly, kPerChannel };

struct SampleSpec {
  int interval_k = 1;
  ChannelMode channel_mode = ChannelMode::kLumaOnly;
};

struct ImageRef {
  std::string class_name;
  std::filesystem::path path;
};

struct SampleSelection {
  std::vector<ImageRef> images;
  /// Classes with fewer than k images contribute nothing.
  std::vector<std::string> classes_without_samples;
  bool empty() const { return images.empty(); }
};

/// Interval sampling: a per-class counter m starts at 1 and an image is taken
/// whenever m % k == 0. Output keeps class order, then manifest order.
SampleSelection sample_images(const CorpusManifest& manifest, const SampleSpec& spec);

/// Per-channel band statistics of un-quantized DCT coefficients. Luma-only
/// mode holds one channel (gray plane or Y); per-channel mode holds Y, Cb, Cr
/// and only accepts RGB images.
class FrequencyStats {
 public:
  explicit FrequencyStats(ChannelMode mode = ChannelMode::kLumaOnly);

  ChannelMode mode() const noexcept { return mode_; }
  int channel_count() const noexcept { return static_cast<int>(channels_.size()); }
  static const char* channel_name(int channel);

  const BandSet& bands(int channel) const { return channels_.at(static_cast<std::size_t>(channel)); }
  BandSet& bands(int channel) { return channels_.at(static_cast<std::size_t>(channel)); }

  /// Nblock: number of 8x8 blocks folded into each channel.
  std::uint64_t total_blocks() const { return channels_[0][0].count; }

  const std::string& source_digest() const noexcept { return source_digest_; }
  void set_source_digest(std::string digest) { source_digest_ = std::move(digest); }

  void accumulate_image(const RasterImage& img);
  /// Same as accumulate_image but on the serial kernels; used by tests.
  void accumulate_image_serial(const RasterImage& img);
  void merge(const FrequencyStats& other);

  /// Cb and Cr folded together; the source for a designed chroma table.
  BandSet pooled_chroma() const;

  friend bool operator==(const FrequencyStats&, const FrequencyStats&) = default;

 private:
  ChannelMode mode_;
  std::vector<BandSet> channels_;
  std::string source_digest_;
};

/// Band indices sorted by stddev descending; ties go to the lower zig-zag
/// position.
std::array<int, 64> rank_bands(const std::array<double, 64>& stddev);

struct BandSummary {
  std::uint64_t count = 0;
  std::array<double, 64> mean{};
  std::array<double, 64> stddev{};
  std::array<int, 64> ranked{};
};

/// Throws kInsufficientData when a band holds fewer than 2 samples.
BandSummary summarize(const BandSet& bands);
std::vector<BandSummary> finalize(const FrequencyStats& stats);

}  // namespace qtune
