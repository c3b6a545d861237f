#include "qtune/cli/table_source.hpp"

#include <charconv>

#include "qtune/error.hpp"

namespace qtune::cli {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

TableProvenance provenance(std::string kind) {
  TableProvenance p;
  p.kind = std::move(kind);
  return p;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

TableDocument standard_document(int qf) {
  TableProvenance p = provenance("standard-qf");
  p.qf = qf;
  return {standard_table(qf, TableKind::kLuma), standard_table(qf, TableKind::kChroma), p};
}

}  // namespace

TableDocument design_from_stats(const FrequencyStats& stats, const PlmParams& params,
                                const DesignOptions& options) {
  params.validate();
  TableDocument doc;
  doc.entries = design_table(summarize(stats.bands(0)).stddev, params, options);
  if (stats.mode() == ChannelMode::kPerChannel) {
    doc.chroma_entries = design_table(summarize(stats.pooled_chroma()).stddev, params, options);
  }
  doc.provenance.kind = "plm";
  doc.provenance.params = params;
  doc.provenance.pin_dc = options.pin_dc;
  return doc;
}

TableSource resolve_table_source(std::string_view spec, const PlmParams& params,
                                 const DesignOptions& options) {
  TableSource src{std::string(spec), {}};
  if (starts_with(spec, "plm:")) {
    src.document = design_from_stats(load_stats(std::string(spec.substr(4))), params, options);
  } else if (starts_with(spec, "standard-qf:")) {
    src.document = standard_document(parse_int(spec.substr(12), "standard-qf"));
  } else if (starts_with(spec, "qf:")) {
    src.document = standard_document(parse_int(spec.substr(3), "qf"));
  } else if (starts_with(spec, "same-q:")) {
    const int q = parse_int(spec.substr(7), "same-q");
    TableProvenance p = provenance("same-q");
    p.q = q;
    src.document = {same_q_table(q), std::nullopt, p};
  } else if (starts_with(spec, "rm-hf:")) {
    std::string_view rest = spec.substr(6);
    int qf = 100;
    if (const auto comma = rest.find(','); comma != std::string_view::npos) {
      const std::string_view base = rest.substr(comma + 1);
      if (starts_with(base, "qf:")) {
        qf = parse_int(base.substr(3), "rm-hf base qf");
      } else if (starts_with(base, "standard-qf:")) {
        qf = parse_int(base.substr(12), "rm-hf base qf");
      } else {
        throw Error(ErrorKind::kInvalidInput, "rm-hf base must be qf:<n>, got '" + std::string(base) + "'");
      }
      rest = rest.substr(0, comma);
    }
    const int n = parse_int(rest, "rm-hf");
    const auto luma = rm_hf_table(standard_table(qf, TableKind::kLuma), n);
    const auto chroma = rm_hf_table(standard_table(qf, TableKind::kChroma), n);
    TableProvenance p = provenance("rm-hf");
    p.qf = qf;
    p.n = n;
    src.document = {luma.table, chroma.table, p};
  } else if (starts_with(spec, "file:")) {
    src.document = load_table(std::string(spec.substr(5)));
  } else {
    throw Error(ErrorKind::kInvalidInput, "unknown table source '" + std::string(spec) +
                                              "' (expected plm:, standard-qf:, qf:, same-q:, rm-hf: or file:)");
  }
  return src;
}

}  // namespace qtune::cli
