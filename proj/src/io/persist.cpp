#include "qtune/io/persist.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "qtune/codec/zigzag.hpp"
#include "qtune/error.hpp"

namespace qtune {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version")) {
    throw Error(ErrorKind::kParse, "document has no schema_version");
  }
  const json& v = doc["schema_version"];
  const std::string got = v.is_string() ? v.get<std::string>() : v.dump();
  if (got != std::to_string(kSchemaVersion)) {
    throw Error(ErrorKind::kVersion, "schema_version " + got + " not readable by version " +
                                         std::to_string(kSchemaVersion) + " reader");
  }
}

// Wraps nlohmann type errors so callers only ever see qtune::Error.
template <typename Fn>
auto with_schema_errors(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("schema mismatch: ") + e.what());
  }
}

const char* mode_name(ChannelMode m) { return m == ChannelMode::kLumaOnly ? "luma-only" : "per-channel"; }

json params_to_json(const PlmParams& p) {
  return {{"a", p.a},   {"b", p.b},   {"c", p.c},   {"k1", p.k1},      {"k2", p.k2},
          {"k3", p.k3}, {"t1", p.t1}, {"t2", p.t2}, {"q_min", p.q_min}};
}

PlmParams params_from_json(const json& j) {
  PlmParams p;
  p.a = j.at("a").get<double>();
  p.b = j.at("b").get<double>();
  p.c = j.at("c").get<double>();
  p.k1 = j.at("k1").get<double>();
  p.k2 = j.at("k2").get<double>();
  p.k3 = j.at("k3").get<double>();
  p.t1 = j.at("t1").get<double>();
  p.t2 = j.at("t2").get<double>();
  p.q_min = j.at("q_min").get<int>();
  return p;
}

QuantTable table_from_array(const json& j) {
  if (!j.is_array() || j.size() != 64) throw Error(ErrorKind::kParse, "table entries must be 64 integers");
  std::array<int, 64> a{};
  for (std::size_t i = 0; i < 64; ++i) a[i] = j[i].get<int>();
  return QuantTable(a);
}

}  // namespace

std::string stats_to_json(const FrequencyStats& stats) {
  json channels = json::object();
  for (int c = 0; c < stats.channel_count(); ++c) {
    json bands = json::object();
    for (int i = 0; i < 64; ++i) {
      const BandAccumulator& b = stats.bands(c)[static_cast<std::size_t>(i)];
      bands[std::to_string(i)] = {{"count", b.count}, {"mean", b.mean}, {"stddev", b.stddev()}, {"m2", b.m2}};
    }
    channels[FrequencyStats::channel_name(c)] = std::move(bands);
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"channel_mode", mode_name(stats.mode())},
              {"channels", std::move(channels)},
              {"total_blocks", stats.total_blocks()},
              {"source_manifest_digest", stats.source_digest()}};
  return doc.dump(1) + "\n";
}

FrequencyStats stats_from_json(std::string_view text) {
  const json doc = parse_document(text);
  check_version(doc);
  return with_schema_errors([&] {
    const std::string mode = doc.at("channel_mode").get<std::string>();
    if (mode != "luma-only" && mode != "per-channel") {
      throw Error(ErrorKind::kParse, "unknown channel_mode " + mode);
    }
    FrequencyStats stats(mode == "luma-only" ? ChannelMode::kLumaOnly : ChannelMode::kPerChannel);
    const json& channels = doc.at("channels");
    for (int c = 0; c < stats.channel_count(); ++c) {
      const json& bands = channels.at(FrequencyStats::channel_name(c));
      for (int i = 0; i < 64; ++i) {
        const json& b = bands.at(std::to_string(i));
        BandAccumulator& acc = stats.bands(c)[static_cast<std::size_t>(i)];
        acc.count = b.at("count").get<std::uint64_t>();
        acc.mean = b.at("mean").get<double>();
        acc.m2 = b.contains("m2") ? b.at("m2").get<double>()
                                  : std::pow(b.at("stddev").get<double>(), 2) * static_cast<double>(acc.count);
      }
    }
    stats.set_source_digest(doc.value("source_manifest_digest", std::string{}));
    if (doc.at("total_blocks").get<std::uint64_t>() != stats.total_blocks()) {
      throw Error(ErrorKind::kParse, "total_blocks disagrees with band counts");
    }
    return stats;
  });
}

void save_stats(const fs::path& path, const FrequencyStats& stats) { write_text(path, stats_to_json(stats)); }
FrequencyStats load_stats(const fs::path& path) { return stats_from_json(read_text(path)); }

std::string stats_csv(const FrequencyStats& stats) {
  std::string out = "channel,band,row,col,zigzag,count,mean,stddev\n";
  char line[160];
  for (int c = 0; c < stats.channel_count(); ++c) {
    for (int i = 0; i < 64; ++i) {
      const BandAccumulator& b = stats.bands(c)[static_cast<std::size_t>(i)];
      std::snprintf(line, sizeof line, "%s,%d,%d,%d,%d,%llu,%.17g,%.17g\n", FrequencyStats::channel_name(c), i,
                    i / 8, i % 8, kNaturalToZigzag[static_cast<std::size_t>(i)],
                    static_cast<unsigned long long>(b.count), b.mean, b.stddev());
      out += line;
    }
  }
  return out;
}

EncodeTables TableDocument::encode_tables() const {
  EncodeTables t{entries, chroma_entries.value_or(entries), !chroma_entries.has_value(), 0};
  if (provenance.kind == "rm-hf" && provenance.n) t.drop_high = *provenance.n;
  return t;
}

std::string table_to_json(const TableDocument& doc) {
  json prov = {{"kind", doc.provenance.kind}};
  if (doc.provenance.params) prov["params"] = params_to_json(*doc.provenance.params);
  if (doc.provenance.pin_dc) prov["pin_dc"] = *doc.provenance.pin_dc;
  if (doc.provenance.qf) prov["qf"] = *doc.provenance.qf;
  if (doc.provenance.q) prov["q"] = *doc.provenance.q;
  if (doc.provenance.n) prov["n"] = *doc.provenance.n;
  json j = {{"schema_version", kSchemaVersion},
            {"order", "natural"},
            {"entries", doc.entries.steps()},
            {"provenance", std::move(prov)}};
  if (doc.chroma_entries) j["chroma_entries"] = doc.chroma_entries->steps();
  return j.dump() + "\n";
}

TableDocument table_from_json(std::string_view text) {
  const json j = parse_document(text);
  check_version(j);
  return with_schema_errors([&] {
    if (j.at("order").get<std::string>() != "natural") {
      throw Error(ErrorKind::kParse, "only natural-order tables are supported");
    }
    TableDocument doc{table_from_array(j.at("entries")), std::nullopt, {}};
    if (j.contains("chroma_entries")) doc.chroma_entries = table_from_array(j.at("chroma_entries"));
    const json& prov = j.at("provenance");
    doc.provenance.kind = prov.at("kind").get<std::string>();
    if (prov.contains("params")) doc.provenance.params = params_from_json(prov.at("params"));
    if (prov.contains("pin_dc")) doc.provenance.pin_dc = prov.at("pin_dc").get<bool>();
    if (prov.contains("qf")) doc.provenance.qf = prov.at("qf").get<int>();
    if (prov.contains("q")) doc.provenance.q = prov.at("q").get<int>();
    if (prov.contains("n")) doc.provenance.n = prov.at("n").get<int>();
    if (doc.provenance.n && (*doc.provenance.n < 0 || *doc.provenance.n > 63)) {
      throw Error(ErrorKind::kParse, "provenance n outside [0,63]");
    }
    return doc;
  });
}

void save_table(const fs::path& path, const TableDocument& doc) { write_text(path, table_to_json(doc)); }
TableDocument load_table(const fs::path& path) { return table_from_json(read_text(path)); }

std::string table_grid(const QuantTable& table) {
  std::ostringstream out;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      char cell[8];
      std::snprintf(cell, sizeof cell, "%s%3d", c == 0 ? "" : " ", table[r * 8 + c]);
      out << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qtune
