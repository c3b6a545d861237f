#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "qtune/io/persist.hpp"
#include "qtune/table/designer.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"
#include "json.hpp"

namespace qtune {
namespace {

using testing::kind_of;

FrequencyStats sample_stats(ChannelMode mode) {
  std::mt19937_64 rng(51);
  FrequencyStats s(mode);
  for (int i = 0; i < 3; ++i) s.accumulate_image(testing::smooth_image(rng, 24, 16, 3));
  s.set_source_digest("0123456789abcdef");
  return s;
}

TEST(StatsJson, RoundTripIsExact) {
  for (auto mode : {ChannelMode::kLumaOnly, ChannelMode::kPerChannel}) {
    const auto s = sample_stats(mode);
    const auto back = stats_from_json(stats_to_json(s));
    EXPECT_EQ(back, s);
  }
}

TEST(StatsJson, DocumentShape) {
  const auto j = nlohmann::json::parse(stats_to_json(sample_stats(ChannelMode::kPerChannel)));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["channel_mode"], "per-channel");
  EXPECT_EQ(j["total_blocks"], 18);
  EXPECT_EQ(j["source_manifest_digest"], "0123456789abcdef");
  EXPECT_TRUE(j["channels"].contains("Cr"));
  EXPECT_EQ(j["channels"]["Y"].size(), 64u);
  EXPECT_TRUE(j["channels"]["Y"]["17"].contains("stddev"));
}

TEST(StatsJson, MalformedIsParseError) {
  auto text = stats_to_json(sample_stats(ChannelMode::kLumaOnly));
  text.resize(text.size() / 2);
  EXPECT_EQ(kind_of([&] { stats_from_json(text); }), ErrorKind::kParse);
  EXPECT_EQ(kind_of([] { stats_from_json("{\"schema_version\":1}"); }), ErrorKind::kParse);
}

TEST(StatsJson, VersionMismatch) {
  auto j = nlohmann::json::parse(stats_to_json(sample_stats(ChannelMode::kLumaOnly)));
  j["schema_version"] = 2;
  EXPECT_EQ(kind_of([&] { stats_from_json(j.dump()); }), ErrorKind::kVersion);
  j["schema_version"] = "2";
  EXPECT_EQ(kind_of([&] { stats_from_json(j.dump()); }), ErrorKind::kVersion);
}

TEST(StatsJson, InconsistentBlockCount) {
  auto j = nlohmann::json::parse(stats_to_json(sample_stats(ChannelMode::kLumaOnly)));
  j["total_blocks"] = 5;
  EXPECT_EQ(kind_of([&] { stats_from_json(j.dump()); }), ErrorKind::kParse);
}

TEST(StatsCsv, OneRowPerBand) {
  const auto csv = stats_csv(sample_stats(ChannelMode::kPerChannel));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "channel,band,row,col,zigzag,count,mean,stddev");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 64);
}

TEST(TableJson, RoundTrip) {
  TableDocument doc{standard_table(60, TableKind::kLuma), standard_table(60, TableKind::kChroma), {}};
  doc.provenance.kind = "plm";
  doc.provenance.params = PlmParams{};
  doc.provenance.pin_dc = true;
  EXPECT_EQ(table_from_json(table_to_json(doc)), doc);

  TableDocument single{same_q_table(4), std::nullopt, {}};
  single.provenance.kind = "same-q";
  single.provenance.q = 4;
  const auto back = table_from_json(table_to_json(single));
  EXPECT_EQ(back, single);
  EXPECT_TRUE(back.encode_tables().single_table);
}

TEST(TableJson, RmHfCarriesDropCount) {
  TableDocument doc{standard_table(100, TableKind::kLuma), standard_table(100, TableKind::kChroma), {}};
  doc.provenance.kind = "rm-hf";
  doc.provenance.n = 3;
  doc.provenance.qf = 100;
  EXPECT_EQ(table_from_json(table_to_json(doc)).encode_tables().drop_high, 3);
}

TEST(TableJson, RejectsBadDocuments) {
  EXPECT_EQ(kind_of([] { table_from_json("[1,2"); }), ErrorKind::kParse);
  auto j = nlohmann::json::parse(table_to_json(TableDocument{same_q_table(9), std::nullopt, {"same-q"}}));
  j["entries"].erase(0);
  EXPECT_EQ(kind_of([&] { table_from_json(j.dump()); }), ErrorKind::kParse);
  j = nlohmann::json::parse(table_to_json(TableDocument{same_q_table(9), std::nullopt, {"same-q"}}));
  j["entries"][3] = 0;
  EXPECT_THROW(table_from_json(j.dump()), Error);
  j["entries"][3] = 9;
  j["schema_version"] = 7;
  EXPECT_EQ(kind_of([&] { table_from_json(j.dump()); }), ErrorKind::kVersion);
}

TEST(TableGrid, EightByEight) {
  const auto g = table_grid(standard_table(50, TableKind::kLuma));
  EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 8);
  EXPECT_EQ(g.substr(0, g.find('\n')), " 16  11  10  16  24  40  51  61");
}

TEST(SaveLoad, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "qtune_persist";
  std::filesystem::create_directories(dir);
  const auto s = sample_stats(ChannelMode::kLumaOnly);
  save_stats(dir / "s.json", s);
  EXPECT_EQ(load_stats(dir / "s.json"), s);
  EXPECT_EQ(kind_of([&] { load_stats(dir / "missing.json"); }), ErrorKind::kIo);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qtune
