#include "qtune/cli/commands.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtune/codec/jfif.hpp"
#include "qtune/error.hpp"
#include "qtune/io/image_io.hpp"
#include "qtune/io/persist.hpp"
#include "qtune/table/designer.hpp"

namespace qtune::cli {

namespace fs = std::filesystem;

AnalyzeResult analyze_corpus(const CorpusManifest& manifest, const SampleSpec& spec) {
  const SampleSelection selection = sample_images(manifest, spec);
  AnalyzeResult r{FrequencyStats(spec.channel_mode), manifest.classes.size(), selection.images.size(),
                  selection.classes_without_samples};
  for (const auto& ref : selection.images) r.stats.accumulate_image(load_image(ref.path));
  r.stats.set_source_digest(manifest.digest);
  return r;
}

BenchmarkResult run_benchmark(const CorpusManifest& manifest, const std::vector<TableSource>& sources,
                              PsnrMode psnr_mode) {
  std::vector<fs::path> images;
  for (const auto& c : manifest.classes) images.insert(images.end(), c.images.begin(), c.images.end());
  if (images.empty()) throw Error(ErrorKind::kInvalidInput, "benchmark corpus has no images");
  if (sources.empty()) throw Error(ErrorKind::kInvalidInput, "benchmark needs at least one --table");

  const TableSource reference = resolve_table_source("standard-qf:100");
  std::vector<std::vector<BenchmarkRow>> per_image(images.size());
  std::vector<std::exception_ptr> failures(images.size());

  const auto n = static_cast<std::ptrdiff_t>(images.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const RasterImage img = load_image(images[idx]);
      const std::size_t ref_bytes = encode_image(img, reference.tables()).size();
      for (const auto& src : sources) {
        const EncodeTables tables = src.tables();
        const EncodedJpeg jpeg = encode_image(img, tables);
        BenchmarkRow row;
        row.path = images[idx].string();
        row.source = src.label;
        row.reference_bytes = ref_bytes;
        row.candidate_bytes = jpeg.size();
        row.compression_rate = compression_rate(ref_bytes, jpeg.size());
        row.quality = psnr(img, decode_image(jpeg), psnr_mode);
        row.zero_fraction = coefficient_sparsity(img, tables).zero_fraction;
        per_image[idx].push_back(std::move(row));
      }
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  BenchmarkResult result;
  for (auto& rows : per_image) {
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  for (const auto& src : sources) {
    SourceSummary s;
    s.source = src.label;
    double psnr_sum = 0.0;
    std::size_t lossy = 0;
    for (const auto& r : result.rows) {
      if (r.source != src.label) continue;
      ++s.images;
      s.reference_bytes += r.reference_bytes;
      s.candidate_bytes += r.candidate_bytes;
      s.mean_cr += r.compression_rate;
      s.mean_zero_fraction += r.zero_fraction;
      if (r.quality.psnr) {
        psnr_sum += *r.quality.psnr;
        ++lossy;
      } else {
        ++s.lossless_images;
      }
    }
    s.aggregate_cr = compression_rate(s.reference_bytes, s.candidate_bytes);
    s.mean_cr /= static_cast<double>(s.images);
    s.mean_zero_fraction /= static_cast<double>(s.images);
    if (lossy > 0) s.mean_psnr = psnr_sum / static_cast<double>(lossy);
    result.summaries.push_back(std::move(s));
  }
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string benchmark_csv(const BenchmarkResult& result) {
  std::string out = "path,source,bytes_ref,bytes_candidate,cr,psnr,zero_fraction\n";
  for (const auto& r : result.rows) {
    out += csv_field(r.path) + "," + csv_field(r.source) + "," + std::to_string(r.reference_bytes) + "," +
           std::to_string(r.candidate_bytes) + "," + fmt_double(r.compression_rate) + "," +
           (r.quality.psnr ? fmt_double(*r.quality.psnr) : std::string("lossless")) + "," +
           fmt_double(r.zero_fraction) + "\n";
  }
  return out;
}

std::string benchmark_json(const BenchmarkResult& result, const std::string& manifest_digest) {
  nlohmann::json sources = nlohmann::json::array();
  for (const auto& s : result.summaries) {
    nlohmann::json j = {{"source", s.source},
                        {"images", s.images},
                        {"bytes_ref", s.reference_bytes},
                        {"bytes_candidate", s.candidate_bytes},
                        {"aggregate_cr", s.aggregate_cr},
                        {"mean_cr", s.mean_cr},
                        {"lossless_images", s.lossless_images},
                        {"mean_zero_fraction", s.mean_zero_fraction}};
    j["mean_psnr"] = s.mean_psnr ? nlohmann::json(*s.mean_psnr) : nlohmann::json("lossless");
    sources.push_back(std::move(j));
  }
  nlohmann::json doc = {{"schema_version", kSchemaVersion},
                        {"reference", "standard-qf:100"},
                        {"source_manifest_digest", manifest_digest},
                        {"sources", std::move(sources)}};
  return doc.dump(1) + "\n";
}

std::vector<std::string> split_source_list(const std::string& list, const std::vector<std::string>& labels) {
  std::vector<std::string> pieces;
  std::stringstream ss(list);
  for (std::string p; std::getline(ss, p, ',');) pieces.push_back(p);
  auto known = [&](const std::string& s) { return std::find(labels.begin(), labels.end(), s) != labels.end(); };
  std::vector<std::string> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string cur = pieces[i];
    std::size_t j = i;
    while (!known(cur) && j + 1 < pieces.size()) cur += "," + pieces[++j];
    if (known(cur)) {
      out.push_back(cur);
      i = j;
    } else {
      out.push_back(pieces[i]);  // reported as unknown by check_cr_order
    }
  }
  return out;
}

bool check_cr_order(const BenchmarkResult& result, const std::vector<std::string>& order, std::string& why) {
  std::vector<const SourceSummary*> seq;
  for (const auto& name : order) {
    const auto it = std::find_if(result.summaries.begin(), result.summaries.end(),
                                 [&](const SourceSummary& s) { return s.source == name; });
    if (it == result.summaries.end()) {
      why = "unknown source '" + name + "' in CR order";
      return false;
    }
    seq.push_back(&*it);
  }
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!(seq[i - 1]->aggregate_cr > seq[i]->aggregate_cr)) {
      why = "CR(" + seq[i - 1]->source + ")=" + fmt_double(seq[i - 1]->aggregate_cr) + " is not above CR(" +
            seq[i]->source + ")=" + fmt_double(seq[i]->aggregate_cr);
      return false;
    }
  }
  return true;
}

namespace {

struct PlmFlags {
  PlmParams params;
  bool auto_thresholds = false;
  bool no_pin_dc = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--a", params.a, "HF intercept")->capture_default_str();
    cmd.add_option("--b", params.b, "MF intercept")->capture_default_str();
    cmd.add_option("--c", params.c, "LF intercept")->capture_default_str();
    cmd.add_option("--k1", params.k1, "HF slope")->capture_default_str();
    cmd.add_option("--k2", params.k2, "MF slope")->capture_default_str();
    cmd.add_option("--k3", params.k3, "LF slope")->capture_default_str();
    cmd.add_option("--t1", params.t1, "HF/MF stddev threshold")->capture_default_str();
    cmd.add_option("--t2", params.t2, "MF/LF stddev threshold")->capture_default_str();
    cmd.add_option("--qmin", params.q_min, "lower bound on every step")->capture_default_str();
    cmd.add_flag("--auto-thresholds", auto_thresholds, "take t1/t2 from the ranked band stddevs");
    cmd.add_flag("--no-pin-dc", no_pin_dc, "map DC through the PLM instead of pinning it to qmin");
  }
  DesignOptions options() const { return {!no_pin_dc, auto_thresholds}; }
};

ChannelMode parse_channel_mode(const std::string& s) {
  if (s == "luma" || s == "luma-only") return ChannelMode::kLumaOnly;
  if (s == "per-channel") return ChannelMode::kPerChannel;
  throw Error(ErrorKind::kInvalidInput, "--channels must be luma or per-channel");
}

int cmd_analyze(const std::string& corpus, int k, const std::string& channels, const std::string& out_path,
                const std::string& csv_path, int hist_band, double bin_width, const std::string& hist_path,
                std::ostream& out, std::ostream& err) {
  const CorpusManifest manifest = scan_corpus(corpus);
  const AnalyzeResult r = analyze_corpus(manifest, {k, parse_channel_mode(channels)});
  for (const auto& c : r.classes_without_samples) {
    err << "warning: class '" << c << "' has fewer than k=" << k << " images; nothing sampled\n";
  }
  if (r.sampled == 0) {
    throw Error(ErrorKind::kInsufficientData, "interval k=" + std::to_string(k) + " selects no images");
  }
  finalize(r.stats);  // enforces count >= 2 per band
  if (!out_path.empty()) save_stats(out_path, r.stats);
  if (!csv_path.empty()) write_text(csv_path, stats_csv(r.stats));
  if (!hist_path.empty()) {
    std::vector<double> samples;
    for (const auto& ref : sample_images(manifest, {k, ChannelMode::kLumaOnly}).images) {
      const auto c = band_coefficients(load_image(ref.path), hist_band);
      samples.insert(samples.end(), c.begin(), c.end());
    }
    write_text(hist_path, histogram_csv(histogram(samples, bin_width)));
  }
  out << "classes=" << r.classes << " sampled=" << r.sampled << " blocks=" << r.stats.total_blocks() << "\n";
  return kExitOk;
}

void print_segmentation(const std::array<double, 64>& stddev, SegmentationMode mode, std::ostream& out) {
  const BandSegmentation s = segment_bands(stddev, mode);
  auto list = [&](const char* name, const std::vector<int>& v) {
    out << name << ":";
    for (int b : v) out << ' ' << b;
    out << '\n';
  };
  list("LF", s.lf);
  list("MF", s.mf);
  list("HF", s.hf);
}

int cmd_design_table(const std::string& stats_path, const PlmFlags& flags, const std::string& out_path,
                     const std::string& segmentation, std::ostream& out) {
  const FrequencyStats stats = load_stats(stats_path);
  const TableDocument doc = design_from_stats(stats, flags.params, flags.options());
  if (!out_path.empty()) save_table(out_path, doc);
  out << table_grid(doc.entries);
  if (doc.chroma_entries) out << "chroma:\n" << table_grid(*doc.chroma_entries);
  if (!segmentation.empty()) {
    const SegmentationMode mode =
        segmentation == "position" ? SegmentationMode::kPosition : SegmentationMode::kMagnitude;
    if (segmentation != "position" && segmentation != "magnitude") {
      throw Error(ErrorKind::kInvalidInput, "--segmentation must be magnitude or position");
    }
    print_segmentation(summarize(stats.bands(0)).stddev, mode, out);
  }
  return kExitOk;
}

int cmd_compress(const std::string& input, const std::string& table_spec, const PlmFlags& flags,
                 const std::string& out_path, std::ostream& out) {
  const RasterImage img = load_image(input);
  const TableSource src = resolve_table_source(table_spec, flags.params, flags.options());
  const EncodedJpeg jpeg = encode_image(img, src.tables());
  write_file(out_path, jpeg.bytes);
  out << out_path << ": " << img.width() << "x" << img.height() << "x" << img.channels() << " " << jpeg.size()
      << " bytes\n";
  return kExitOk;
}

int cmd_decompress(const std::string& input, const std::string& out_path, std::ostream& out) {
  const RasterImage img = decode_image(read_file(input));
  save_pnm(out_path, img);
  out << out_path << ": " << img.width() << "x" << img.height() << "x" << img.channels() << "\n";
  return kExitOk;
}

int cmd_benchmark(const std::string& corpus, const std::vector<std::string>& specs, const PlmFlags& flags,
                  const std::string& csv_path, const std::string& json_path, const std::string& order,
                  const std::string& psnr_mode, std::ostream& out, std::ostream& err) {
  const CorpusManifest manifest = scan_corpus(corpus);
  std::vector<TableSource> sources;
  for (const auto& s : specs) sources.push_back(resolve_table_source(s, flags.params, flags.options()));
  if (psnr_mode != "luma" && psnr_mode != "all") throw Error(ErrorKind::kInvalidInput, "--psnr must be luma or all");
  const BenchmarkResult result =
      run_benchmark(manifest, sources, psnr_mode == "all" ? PsnrMode::kAllChannels : PsnrMode::kLuma);
  if (!csv_path.empty()) write_text(csv_path, benchmark_csv(result));
  if (!json_path.empty()) write_text(json_path, benchmark_json(result, manifest.digest));

  out << std::left << std::setw(28) << "source" << std::right << std::setw(10) << "CR" << std::setw(12)
      << "PSNR(dB)" << std::setw(10) << "zeros" << "\n";
  for (const auto& s : result.summaries) {
    out << std::left << std::setw(28) << s.source << std::right << std::fixed << std::setprecision(3)
        << std::setw(10) << s.aggregate_cr << std::setw(12)
        << (s.mean_psnr ? fmt_double(*s.mean_psnr).substr(0, fmt_double(*s.mean_psnr).size() - 3) : "lossless")
        << std::setw(10) << s.mean_zero_fraction << "\n";
  }
  out.unsetf(std::ios::fixed);

  if (!order.empty()) {
    std::vector<std::string> labels;
    for (const auto& s : sources) labels.push_back(s.label);
    std::string why;
    if (!check_cr_order(result, split_source_list(order, labels), why)) {
      err << "CR order assertion failed: " << why << "\n";
      return kExitAssertion;
    }
    out << "CR order holds: " << order << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantization-table design and baseline JPEG toolkit", "qtune"};
  app.require_subcommand(1);

  std::string corpus, stats_path, input, out_path, csv_path, json_path, table_spec, order;
  std::string channels = "luma", hist_path, segmentation, psnr_mode = "luma";
  int k = 1;
  int hist_band = 0;
  double bin_width = 1.0;
  std::vector<std::string> tables;
  PlmFlags plm;

  auto* analyze = app.add_subcommand("analyze", "band statistics of a class-per-directory corpus");
  analyze->add_option("corpus", corpus, "corpus root")->required();
  analyze->add_option("--k", k, "sampling interval")->capture_default_str();
  analyze->add_option("--channels", channels, "luma or per-channel")->capture_default_str();
  analyze->add_option("--out", out_path, "stats JSON output");
  analyze->add_option("--csv", csv_path, "per-band CSV output");
  analyze->add_option("--histogram-band", hist_band, "natural band index for --histogram-csv");
  analyze->add_option("--bin-width", bin_width, "histogram bin width")->capture_default_str();
  analyze->add_option("--histogram-csv", hist_path, "coefficient histogram CSV output");

  auto* design = app.add_subcommand("design-table", "quantization table from saved statistics");
  design->add_option("stats", stats_path, "stats JSON from analyze")->required();
  design->add_option("--out", out_path, "table JSON output");
  design->add_option("--segmentation", segmentation, "also print LF/MF/HF bands: magnitude or position");
  plm.attach(*design);

  auto* compress = app.add_subcommand("compress", "encode an image as baseline JPEG");
  compress->add_option("input", input, "PNG, PPM/PGM or JPEG input")->required();
  compress->add_option("--table", table_spec, "table source")->required();
  compress->add_option("--out", out_path, "JPEG output")->required();
  plm.attach(*compress);

  auto* decompress = app.add_subcommand("decompress", "decode a baseline JPEG to PPM/PGM");
  decompress->add_option("input", input, "JPEG input")->required();
  decompress->add_option("--out", out_path, "PPM/PGM output")->required();

  auto* bench = app.add_subcommand("benchmark", "rate/quality/sparsity of table sources over a corpus");
  bench->add_option("corpus", corpus, "corpus root")->required();
  bench->add_option("--table", tables, "table source (repeatable)")->required();
  bench->add_option("--csv", csv_path, "per-image CSV output");
  bench->add_option("--json", json_path, "summary JSON output");
  bench->add_option("--assert-cr-order", order, "comma list of sources expected in strictly decreasing CR");
  bench->add_option("--psnr", psnr_mode, "luma or all")->capture_default_str();
  plm.attach(*bench);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(corpus, k, channels, out_path, csv_path, hist_band, bin_width, hist_path, out, err);
    }
    if (design->parsed()) return cmd_design_table(stats_path, plm, out_path, segmentation, out);
    if (compress->parsed()) return cmd_compress(input, table_spec, plm, out_path, out);
    if (decompress->parsed()) return cmd_decompress(input, out_path, out);
    if (bench->parsed()) {
      return cmd_benchmark(corpus, tables, plm, csv_path, json_path, order, psnr_mode, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qtune::cli
