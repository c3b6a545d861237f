#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtune/cli/table_source.hpp"
#include "qtune/io/corpus.hpp"
#include "qtune/metrics.hpp"

namespace qtune::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `qtune` tool: analyze, design-table, compress,
/// decompress, benchmark.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// Same, for argument lists that exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct AnalyzeResult {
  FrequencyStats stats;
  std::size_t classes = 0;
  std::size_t sampled = 0;
  std::vector<std::string> classes_without_samples;
};

AnalyzeResult analyze_corpus(const CorpusManifest& manifest, const SampleSpec& spec);

struct BenchmarkRow {
  std::string path;
  std::string source;
  std::size_t reference_bytes = 0;
  std::size_t candidate_bytes = 0;
  double compression_rate = 0.0;
  QualityReport quality;
  double zero_fraction = 0.0;
};

struct SourceSummary {
  std::string source;
  std::size_t images = 0;
  std::size_t reference_bytes = 0;
  std::size_t candidate_bytes = 0;
  /// Corpus-level rate: total reference bytes / total candidate bytes.
  double aggregate_cr = 0.0;
  double mean_cr = 0.0;
  /// Mean over lossy images; empty when every image was lossless.
  std::optional<double> mean_psnr;
  std::size_t lossless_images = 0;
  double mean_zero_fraction = 0.0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;  // manifest order, then source order
  std::vector<SourceSummary> summaries;
};

/// Encodes every image with the QF-100 reference and each source, decoding
/// the emitted bytes for PSNR. Images run in parallel; row order is fixed.
BenchmarkResult run_benchmark(const CorpusManifest& manifest, const std::vector<TableSource>& sources,
                              PsnrMode psnr_mode = PsnrMode::kLuma);

std::string benchmark_csv(const BenchmarkResult& result);
std::string benchmark_json(const BenchmarkResult& result, const std::string& manifest_digest);

/// Splits a comma list into source labels, re-joining pieces so labels that
/// themselves contain commas (rm-hf:3,qf:100) still match.
std::vector<std::string> split_source_list(const std::string& list, const std::vector<std::string>& labels);

/// True when aggregate CR strictly decreases along `order`.
bool check_cr_order(const BenchmarkResult& result, const std::vector<std::string>& order, std::string& why);

}  // namespace qtune::cli
