#pragma once

#include <string>
#include <string_view>

#include "qtune/codec/jfif.hpp"
#include "qtune/freq/analysis.hpp"
#include "qtune/io/persist.hpp"
#include "qtune/table/designer.hpp"

namespace qtune::cli {

struct TableSource {
  std::string label;
  TableDocument document;
  EncodeTables tables() const { return document.encode_tables(); }
};

/// Luma table from channel Y; per-channel statistics also get a chroma table
/// designed from the pooled Cb/Cr bands.
TableDocument design_from_stats(const FrequencyStats& stats, const PlmParams& params,
                                const DesignOptions& options);

/// Accepted specs:
///   plm:<stats.json>         designed from saved statistics
///   standard-qf:<qf>, qf:<qf> Annex K tables scaled to quality qf
///   same-q:<q>               uniform step q
///   rm-hf:<n>[,qf:<qf>]      standard table (default qf 100) with the n
///                            highest zig-zag positions zeroed
///   file:<table.json>        saved table document
/// Throws kInvalidInput for anything else.
TableSource resolve_table_source(std::string_view spec, const PlmParams& params = {},
                                 const DesignOptions& options = {});

}  // namespace qtune::cli
