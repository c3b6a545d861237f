#include <gtest/gtest.h>

#include <random>

#include "qtune/codec/blocks.hpp"
#include "qtune/codec/color.hpp"
#include "qtune/codec/dct.hpp"
#include "qtune/codec/zigzag.hpp"
#include "qtune/freq/analysis.hpp"
#include "qtune/io/corpus.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

namespace qtune {
namespace {

using testing::kind_of;

CorpusManifest fake_manifest(const std::vector<std::pair<std::string, int>>& sizes) {
  CorpusManifest m;
  m.root = "/virtual";
  for (const auto& [name, n] : sizes) {
    CorpusClass c{name, {}};
    for (int i = 1; i <= n; ++i) c.images.push_back(m.root / name / (name + std::to_string(i) + ".ppm"));
    m.classes.push_back(std::move(c));
  }
  return m;
}

TEST(SampleImages, EveryKthPerClass) {
  const auto m = fake_manifest({{"a", 10}, {"b", 5}});
  const auto sel = sample_images(m, {3, ChannelMode::kLumaOnly});
  ASSERT_EQ(sel.images.size(), 4u);
  EXPECT_EQ(sel.images[0].path.filename(), "a3.ppm");
  EXPECT_EQ(sel.images[1].path.filename(), "a6.ppm");
  EXPECT_EQ(sel.images[2].path.filename(), "a9.ppm");
  EXPECT_EQ(sel.images[3].path.filename(), "b3.ppm");
  EXPECT_TRUE(sel.classes_without_samples.empty());
}

TEST(SampleImages, CounterRestartsPerClassAndWarnsOnSmallClasses) {
  const auto m = fake_manifest({{"a", 2}, {"b", 4}});
  const auto sel = sample_images(m, {4, ChannelMode::kLumaOnly});
  ASSERT_EQ(sel.images.size(), 1u);
  EXPECT_EQ(sel.images[0].class_name, "b");
  ASSERT_EQ(sel.classes_without_samples.size(), 1u);
  EXPECT_EQ(sel.classes_without_samples[0], "a");
}

TEST(SampleImages, KOneTakesEverything) {
  const auto m = fake_manifest({{"a", 3}, {"b", 2}});
  EXPECT_EQ(sample_images(m, {1, ChannelMode::kLumaOnly}).images.size(), 5u);
}

TEST(SampleImages, RejectsBadArguments) {
  const auto m = fake_manifest({{"a", 3}});
  EXPECT_EQ(kind_of([&] { sample_images(m, {0, ChannelMode::kLumaOnly}); }), ErrorKind::kInvalidParams);
  EXPECT_THROW(sample_images(CorpusManifest{}, {1, ChannelMode::kLumaOnly}), Error);
}

TEST(FrequencyStats, ConstantImagesHaveNoAcSpread) {
  FrequencyStats stats;
  for (int level : {30, 200}) {
    RasterImage img(24, 16, 1);
    std::fill(img.plane(0).begin(), img.plane(0).end(), static_cast<std::uint8_t>(level));
    stats.accumulate_image(img);
  }
  EXPECT_EQ(stats.total_blocks(), 12u);
  const auto s = summarize(stats.bands(0));
  for (int i = 1; i < 64; ++i) EXPECT_NEAR(s.stddev[i], 0.0, 1e-9);
  // DC alternates between two levels, six blocks each: stddev is half the gap.
  EXPECT_NEAR(s.stddev[0], 0.5 * 8.0 * (200 - 30), 1e-9);
}

TEST(FrequencyStats, MatchesTwoPassOracle) {
  std::mt19937_64 rng(21);
  FrequencyStats stats;
  std::array<std::vector<double>, 64> samples;
  for (int t = 0; t < 6; ++t) {
    const RasterImage img = testing::smooth_image(rng, 24 + 8 * t, 16 + t, 3);
    stats.accumulate_image(img);
    const Plane y = luma_plane(img);
    const auto grid = block_grid(img.width(), img.height());
    for (int by = 0; by < grid.rows; ++by) {
      for (int bx = 0; bx < grid.cols; ++bx) {
        std::array<double, 64> s{};
        for (int yy = 0; yy < 8; ++yy) {
          for (int xx = 0; xx < 8; ++xx) {
            const int x = std::min(bx * 8 + xx, img.width() - 1);
            const int yv = std::min(by * 8 + yy, img.height() - 1);
            s[yy * 8 + xx] = y[static_cast<std::size_t>(yv * img.width() + x)] - 128.0;
          }
        }
        const auto c = testing::direct_dct(s);
        for (int i = 0; i < 64; ++i) samples[i].push_back(c[i]);
      }
    }
  }
  const auto s = summarize(stats.bands(0));
  for (int i = 0; i < 64; ++i) {
    ASSERT_EQ(s.count, samples[i].size());
    EXPECT_NEAR(s.mean[i], testing::two_pass_mean(samples[i]), 1e-9);
    EXPECT_NEAR(s.stddev[i], testing::two_pass_stddev(samples[i]), 1e-9);
  }
}

TEST(FrequencyStats, MergeMatchesSingleStream) {
  std::mt19937_64 rng(22);
  std::vector<RasterImage> imgs;
  for (int t = 0; t < 8; ++t) imgs.push_back(testing::smooth_image(rng, 32, 24, 3));
  FrequencyStats all(ChannelMode::kPerChannel), left(ChannelMode::kPerChannel), right(ChannelMode::kPerChannel);
  for (int t = 0; t < 8; ++t) {
    all.accumulate_image(imgs[t]);
    (t < 3 ? left : right).accumulate_image(imgs[t]);
  }
  FrequencyStats lr = left, rl = right;
  lr.merge(right);
  rl.merge(left);
  for (int c = 0; c < 3; ++c) {
    const auto a = summarize(all.bands(c)), b = summarize(lr.bands(c)), d = summarize(rl.bands(c));
    for (int i = 0; i < 64; ++i) {
      EXPECT_NEAR(a.stddev[i], b.stddev[i], 1e-9);
      EXPECT_NEAR(a.stddev[i], d.stddev[i], 1e-9);
      EXPECT_NEAR(a.mean[i], b.mean[i], 1e-9);
    }
  }
}

TEST(FrequencyStats, SerialAndParallelAccumulationAgree) {
  std::mt19937_64 rng(23);
  FrequencyStats s(ChannelMode::kPerChannel), p(ChannelMode::kPerChannel);
  for (int t = 0; t < 3; ++t) {
    const auto img = testing::random_image(rng, 41, 33, 3);
    s.accumulate_image_serial(img);
    p.accumulate_image(img);
  }
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 64; ++i) {
      EXPECT_EQ(s.bands(c)[i].count, p.bands(c)[i].count);
      EXPECT_NEAR(s.bands(c)[i].stddev(), p.bands(c)[i].stddev(), 1e-9);
    }
  }
}

TEST(FrequencyStats, PerChannelNeedsRgb) {
  FrequencyStats stats(ChannelMode::kPerChannel);
  EXPECT_EQ(stats.channel_count(), 3);
  EXPECT_EQ(kind_of([&] { stats.accumulate_image(RasterImage(8, 8, 1)); }), ErrorKind::kInvalidInput);
}

TEST(FrequencyStats, PooledChromaCountsBothPlanes) {
  std::mt19937_64 rng(24);
  FrequencyStats stats(ChannelMode::kPerChannel);
  stats.accumulate_image(testing::random_image(rng, 16, 16, 3));
  const auto pooled = stats.pooled_chroma();
  EXPECT_EQ(pooled[5].count, 8u);
}

TEST(Summarize, NeedsTwoSamples) {
  FrequencyStats stats;
  stats.accumulate_image(RasterImage(8, 8, 1));
  EXPECT_EQ(kind_of([&] { summarize(stats.bands(0)); }), ErrorKind::kInsufficientData);
  EXPECT_EQ(kind_of([&] { finalize(FrequencyStats{}); }), ErrorKind::kInsufficientData);
}

TEST(RankBands, DescendingWithZigzagTieBreak) {
  std::array<double, 64> d{};
  d.fill(1.0);
  d[kZigzagToNatural[10]] = 5.0;
  d[kZigzagToNatural[3]] = 5.0;
  const auto r = rank_bands(d);
  EXPECT_EQ(r[0], kZigzagToNatural[3]);
  EXPECT_EQ(r[1], kZigzagToNatural[10]);
  EXPECT_EQ(r[2], kZigzagToNatural[0]);
  EXPECT_EQ(r[3], kZigzagToNatural[1]);
}

TEST(RankBands, MatchesCountingOracle) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> coarse(0, 6);
  std::array<int, 64> zz{};
  for (int i = 0; i < 64; ++i) zz[i] = kNaturalToZigzag[i];
  for (int t = 0; t < 200; ++t) {
    std::array<double, 64> d{};
    for (auto& v : d) v = coarse(rng) * 1.5;  // plenty of ties
    EXPECT_EQ(rank_bands(d), testing::count_rank(d, zz));
  }
}

}  // namespace
}  // namespace qtune
