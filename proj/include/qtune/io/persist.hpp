#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qtune/codec/jfif.hpp"
#include "qtune/codec/quantize.hpp"
#include "qtune/freq/analysis.hpp"
#include "qtune/table/designer.hpp"

namespace qtune {

inline constexpr int kSchemaVersion = 1;

// Statistics document:
//   {"schema_version":1, "channel_mode":"luma-only"|"per-channel",
//    "channels":{"Y":{"0":{"count","mean","stddev","m2"}, ... "63":{...}}, ...},
//    "total_blocks":N, "source_manifest_digest":"..."}
std::string stats_to_json(const FrequencyStats& stats);
/// kParse (with byte position) on malformed JSON, kVersion on schema mismatch.
FrequencyStats stats_from_json(std::string_view text);
void save_stats(const std::filesystem::path& path, const FrequencyStats& stats);
FrequencyStats load_stats(const std::filesystem::path& path);

/// One row per channel and band: channel,band,row,col,zigzag,count,mean,stddev.
std::string stats_csv(const FrequencyStats& stats);

struct TableProvenance {
  std::string kind;  // plm | standard-qf | same-q | rm-hf | file
  std::optional<PlmParams> params;
  std::optional<bool> pin_dc;
  std::optional<int> qf;
  std::optional<int> q;
  std::optional<int> n;
  friend bool operator==(const TableProvenance&, const TableProvenance&) = default;
};

// Table document:
//   {"schema_version":1, "order":"natural", "entries":[64 ints],
//    "chroma_entries":[64 ints]?, "provenance":{"kind":..., ...}}
struct TableDocument {
  QuantTable entries;
  std::optional<QuantTable> chroma_entries;
  TableProvenance provenance;

  /// Single-table encode unless chroma entries are present; RM-HF provenance
  /// carries its drop count.
  EncodeTables encode_tables() const;

  friend bool operator==(const TableDocument&, const TableDocument&) = default;
};

std::string table_to_json(const TableDocument& doc);
TableDocument table_from_json(std::string_view text);
void save_table(const std::filesystem::path& path, const TableDocument& doc);
TableDocument load_table(const std::filesystem::path& path);

/// 8 lines of 8 whitespace-separated steps, natural order.
std::string table_grid(const QuantTable& table);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace qtune
