#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtune/codec/jfif.hpp"
#include "qtune/metrics.hpp"
#include "qtune/table/designer.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

namespace qtune {
namespace {

using testing::kind_of;

TEST(CompressionRate, Ratio) {
  EXPECT_DOUBLE_EQ(compression_rate(1000, 250), 4.0);
  EXPECT_DOUBLE_EQ(compression_rate(500, 500), 1.0);
  const auto r = compare_sizes(300, 600);
  EXPECT_DOUBLE_EQ(r.compression_rate, 0.5);
  EXPECT_EQ(kind_of([] { compression_rate(0, 10); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([] { compression_rate(10, 0); }), ErrorKind::kInvalidInput);
}

TEST(Psnr, IdenticalIsLossless) {
  std::mt19937_64 rng(31);
  const auto img = testing::random_image(rng, 10, 10, 3);
  const auto q = psnr(img, img);
  EXPECT_TRUE(q.lossless());
  EXPECT_EQ(q.mse, 0.0);
}

TEST(Psnr, UnitOffset) {
  RasterImage a(16, 16, 1), b(16, 16, 1);
  std::fill(a.plane(0).begin(), a.plane(0).end(), 100);
  std::fill(b.plane(0).begin(), b.plane(0).end(), 101);
  const auto q = psnr(a, b);
  ASSERT_TRUE(q.psnr.has_value());
  EXPECT_NEAR(*q.psnr, 20.0 * std::log10(255.0), 1e-9);
  EXPECT_NEAR(*q.psnr, 48.13, 0.005);
  const auto sym = psnr(b, a);
  EXPECT_DOUBLE_EQ(*sym.psnr, *q.psnr);
}

TEST(Psnr, ModesOnRgb) {
  RasterImage a(4, 4, 3), b(4, 4, 3);
  // Only blue differs; blue moves luma by 0.114*40 -> 4.56 -> 5 levels after rounding.
  std::fill(b.plane(2).begin(), b.plane(2).end(), 40);
  const auto all = psnr(a, b, PsnrMode::kAllChannels);
  EXPECT_NEAR(all.mse, 40.0 * 40.0 / 3.0, 1e-9);
  const auto luma = psnr(a, b, PsnrMode::kLuma);
  EXPECT_NEAR(luma.mse, 25.0, 1e-9);
  EXPECT_THROW(psnr(a, RasterImage(4, 5, 3)), Error);
}

TEST(Psnr, DecreasesAsQualityDrops) {
  std::mt19937_64 rng(32);
  const auto img = testing::smooth_image(rng, 64, 64, 1);
  double prev = 1e9;
  for (int qf : {95, 75, 50, 25, 10}) {
    const auto t = standard_table(qf, TableKind::kLuma);
    const auto q = psnr(img, decode_image(encode_image(img, t, t)));
    ASSERT_TRUE(q.psnr.has_value());
    EXPECT_LT(*q.psnr, prev) << qf;
    prev = *q.psnr;
  }
}

TEST(Sparsity, GrowsWithStepSize) {
  std::mt19937_64 rng(33);
  const auto img = testing::smooth_image(rng, 48, 48, 3);
  double prev = -1.0;
  for (int q : {1, 2, 4, 8, 16, 32, 64}) {
    const auto s = coefficient_sparsity(img, same_q_table(q));
    EXPECT_GE(s.zero_fraction, prev) << q;
    prev = s.zero_fraction;
  }
  const auto s = coefficient_sparsity(img, QuantTable::filled(255));
  EXPECT_EQ(s.ac_coefficients, 3u * 36u * 63u);
}

TEST(Sparsity, HonoursDropCount) {
  std::mt19937_64 rng(34);
  const auto img = testing::random_image(rng, 16, 16, 1);
  EncodeTables t{QuantTable::filled(1), QuantTable::filled(1)};
  const auto base = coefficient_sparsity(img, t);
  t.drop_high = 63;
  const auto dropped = coefficient_sparsity(img, t);
  EXPECT_DOUBLE_EQ(dropped.zero_fraction, 1.0);
  EXPECT_LT(base.zero_fraction, 0.5);
}

TEST(Histogram, SymmetricBinning) {
  const std::vector<double> xs{-1.5, -0.5, 0.0, 0.5, 1.5, 1.49};
  const auto h = histogram(xs, 1.0);
  ASSERT_EQ(h.size(), 5u);
  EXPECT_EQ(h[0], (HistogramBin{-2.0, 1}));
  EXPECT_EQ(h[1], (HistogramBin{-1.0, 1}));
  EXPECT_EQ(h[2], (HistogramBin{0.0, 1}));
  EXPECT_EQ(h[3], (HistogramBin{1.0, 2}));
  EXPECT_EQ(h[4], (HistogramBin{2.0, 1}));
}

TEST(Histogram, KeepsEmptyInteriorBins) {
  const std::vector<double> xs{0.0, 10.0};
  const auto h = histogram(xs, 2.0);
  ASSERT_EQ(h.size(), 6u);
  EXPECT_EQ(h[2].count, 0u);
  std::uint64_t total = 0;
  for (const auto& b : h) total += b.count;
  EXPECT_EQ(total, 2u);
  EXPECT_EQ(histogram_csv(h).substr(0, 17), "bin_center,count\n");
}

TEST(Histogram, RejectsBadInput) {
  const std::vector<double> xs{1.0};
  EXPECT_THROW(histogram(xs, 0.0), Error);
  EXPECT_THROW(histogram({}, 1.0), Error);
}

TEST(BandCoefficients, OnePerBlock) {
  RasterImage img(24, 16, 1);
  std::fill(img.plane(0).begin(), img.plane(0).end(), 129);
  const auto dc = band_coefficients(img, 0);
  ASSERT_EQ(dc.size(), 6u);
  for (double v : dc) EXPECT_NEAR(v, 8.0, 1e-9);
  EXPECT_THROW(band_coefficients(img, 64), Error);
}

}  // namespace
}  // namespace qtune
