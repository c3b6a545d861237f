#include "qtune/freq/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qtune/codec/color.hpp"
#include "qtune/codec/zigzag.hpp"
#include "qtune/error.hpp"
#include "qtune/kernels.hpp"

namespace qtune {

SampleSelection sample_images(const CorpusManifest& manifest, const SampleSpec& spec) {
  if (spec.interval_k < 1) {
    throw Error(ErrorKind::kInvalidParams, "sampling interval must be >= 1, got " +
                                              std::to_string(spec.interval_k));
  }
  if (manifest.classes.empty() || manifest.image_count() == 0) {
    throw Error(ErrorKind::kInvalidInput, "corpus manifest is empty");
  }
  SampleSelection out;
  for (const auto& cls : manifest.classes) {
    int m = 0;
    bool any = false;
    for (const auto& path : cls.images) {
      ++m;
      if (m % spec.interval_k == 0) {
        out.images.push_back({cls.name, path});
        any = true;
      }
    }
    if (!any) out.classes_without_samples.push_back(cls.name);
  }
  return out;
}

FrequencyStats::FrequencyStats(ChannelMode mode)
    : mode_(mode), channels_(mode == ChannelMode::kLumaOnly ? 1 : 3) {}

const char* FrequencyStats::channel_name(int channel) {
  static constexpr const char* names[] = {"Y", "Cb", "Cr"};
  return channel >= 0 && channel < 3 ? names[channel] : "?";
}

namespace {

template <typename AccumulateFn>
void fold_image(ChannelMode mode, std::vector<BandSet>& channels, const RasterImage& img,
                AccumulateFn&& accumulate) {
  const int w = img.width(), h = img.height();
  if (mode == ChannelMode::kPerChannel) {
    if (img.channels() != 3) {
      throw Error(ErrorKind::kInvalidInput, "per-channel statistics need RGB images");
    }
    const auto ycc = color_convert_forward(img);
    for (int c = 0; c < 3; ++c) accumulate(kernels::PlaneView{ycc[static_cast<std::size_t>(c)], w, h}, channels[static_cast<std::size_t>(c)]);
    return;
  }
  if (img.channels() == 1) {
    accumulate(kernels::PlaneView{img.plane(0), w, h}, channels[0]);
  } else {
    const Plane y = luma_plane(img);
    accumulate(kernels::PlaneView{y, w, h}, channels[0]);
  }
}

}  // namespace

void FrequencyStats::accumulate_image(const RasterImage& img) {
  fold_image(mode_, channels_, img,
             [](kernels::PlaneView p, BandSet& b) { kernels::parallel::accumulate_plane(p, b); });
}

void FrequencyStats::accumulate_image_serial(const RasterImage& img) {
  fold_image(mode_, channels_, img,
             [](kernels::PlaneView p, BandSet& b) { kernels::serial::accumulate_plane(p, b); });
}

void FrequencyStats::merge(const FrequencyStats& other) {
  if (other.mode_ != mode_) throw Error(ErrorKind::kInvalidInput, "cannot merge stats of different channel modes");
  for (std::size_t c = 0; c < channels_.size(); ++c) merge_into(channels_[c], other.channels_[c]);
}

BandSet FrequencyStats::pooled_chroma() const {
  if (mode_ != ChannelMode::kPerChannel) {
    throw Error(ErrorKind::kInvalidInput, "luma-only statistics carry no chroma channels");
  }
  BandSet pooled = channels_[1];
  merge_into(pooled, channels_[2]);
  return pooled;
}

std::array<int, 64> rank_bands(const std::array<double, 64>& stddev) {
  std::array<int, 64> idx{};
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (stddev[a] != stddev[b]) return stddev[a] > stddev[b];
    return kNaturalToZigzag[a] < kNaturalToZigzag[b];
  });
  return idx;
}

BandSummary summarize(const BandSet& bands) {
  BandSummary s;
  s.count = bands[0].count;
  for (int i = 0; i < kBlockArea; ++i) {
    if (bands[i].count < 2) {
      throw Error(ErrorKind::kInsufficientData, "band " + std::to_string(i) + " holds " +
                                                    std::to_string(bands[i].count) +
                                                    " samples, need at least 2");
    }
    s.mean[i] = bands[i].mean;
    s.stddev[i] = bands[i].stddev();
  }
  s.ranked = rank_bands(s.stddev);
  return s;
}

std::vector<BandSummary> finalize(const FrequencyStats& stats) {
  std::vector<BandSummary> out;
  for (int c = 0; c < stats.channel_count(); ++c) out.push_back(summarize(stats.bands(c)));
  return out;
}

}  // namespace qtune
