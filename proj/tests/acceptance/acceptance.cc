// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qtune/cli/commands.hpp"
#include "qtune/cli/table_source.hpp"
#include "qtune/codec/blocks.hpp"
#include "qtune/codec/color.hpp"
#include "qtune/codec/dct.hpp"
#include "qtune/codec/entropy.hpp"
#include "qtune/codec/jfif.hpp"
#include "qtune/freq/analysis.hpp"
#include "qtune/io/corpus.hpp"
#include "qtune/io/image_io.hpp"
#include "qtune/metrics.hpp"
#include "qtune/table/designer.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qtune;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::filesystem::path kCorpus = QTUNE_TEST_DATA "/corpus";

// Random but codable block sequences: DC in the 8-bit range, AC |v| <= 1023,
// density drawn per sequence so long zero runs and dense blocks both occur.
Outcome entropy_round_trip() {
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_int_distribution<int> dc(-1024, 1023), ac(-1023, 1023), small(-15, 15);
  std::uniform_int_distribution<int> nblocks(1, 12), pct(0, 100);
  const std::vector<ScanComponent> luma{{annex_k::dc_luminance(), annex_k::ac_luminance()}};
  const std::vector<ScanComponent> color{{annex_k::dc_luminance(), annex_k::ac_luminance()},
                                         {annex_k::dc_chrominance(), annex_k::ac_chrominance()},
                                         {annex_k::dc_chrominance(), annex_k::ac_chrominance()}};
  int failures = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto& comps = (t % 2) ? color : luma;
    const int density = pct(rng);
    const bool wide = pct(rng) < 30;
    std::vector<ZigzagBlock> blocks(static_cast<std::size_t>(nblocks(rng)) * comps.size());
    for (auto& b : blocks) {
      b.values[0] = static_cast<std::int16_t>(dc(rng));
      for (int i = 1; i < 64; ++i) {
        if (pct(rng) < density) b.values[i] = static_cast<std::int16_t>(wide ? ac(rng) : small(rng));
      }
    }
    const auto bytes = entropy_encode(blocks, comps);
    const auto back = entropy_decode(bytes, comps, blocks.size());
    if (back.blocks != blocks || back.consumed != bytes.size()) ++failures;
  }
  return {failures == 0, std::to_string(trials) + " sequences, " + std::to_string(failures) + " mismatches"};
}

Outcome dct_correctness() {
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_int_distribution<int> d(-128, 127);
  double worst_rt = 0.0, worst_parseval = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::array<double, 64> s{};
    for (auto& v : s) v = d(rng);
    const auto c = forward_dct(s);
    const auto back = inverse_dct(c);
    double es = 0.0, ec = 0.0;
    for (int i = 0; i < 64; ++i) {
      worst_rt = std::max(worst_rt, std::abs(back[i] - s[i]));
      es += s[i] * s[i];
      ec += c[i] * c[i];
    }
    if (es > 0) worst_parseval = std::max(worst_parseval, std::abs(ec - es) / es);
  }
  PixelBlock flat;
  flat.fill(127);
  const auto c = forward_dct(flat);
  double worst_ac = 0.0;
  for (int i = 1; i < 64; ++i) worst_ac = std::max(worst_ac, std::abs(c[i]));
  const bool dc_ok = std::abs(c[0] - 1016.0) <= 1e-9 && worst_ac <= 1e-9;
  return {worst_rt <= 1e-9 && worst_parseval <= 1e-6 && dc_ok,
          "max|IDCT(DCT(b))-b|=" + fmt("%.2e", worst_rt) + " parseval_rel=" + fmt("%.2e", worst_parseval) +
              " DC(127)=" + fmt("%.12g", c[0]) + " max|AC|=" + fmt("%.1e", worst_ac)};
}

int max_error(const RasterImage& a, const RasterImage& b) {
  int m = 0;
  for (int ch = 0; ch < a.channels(); ++ch) {
    for (std::size_t i = 0; i < a.sample_count(); ++i) m = std::max(m, std::abs(a.plane(ch)[i] - b.plane(ch)[i]));
  }
  return m;
}

// Uniform-noise images are the hardest case for step-1 quantization. The
// codec works in YCbCr, so RGB inputs also carry the color-conversion
// rounding; those are reported separately from the single-plane bound.
Outcome near_lossless() {
  std::mt19937_64 rng(0x5eed0003);
  std::uniform_int_distribution<int> side(1, 128);
  const EncodeTables ones{QuantTable::filled(1), QuantTable::filled(1)};
  int worst_gray = 0, worst_rgb = 0, rgb_over = 0;
  for (int t = 0; t < 100; ++t) {
    const int w = side(rng), h = side(rng);
    const RasterImage gray = testing::random_image(rng, w, h, 1);
    worst_gray = std::max(worst_gray, max_error(gray, decode_image(encode_image(gray, ones))));
    const RasterImage rgb = testing::random_image(rng, w, h, 3);
    const int e = max_error(rgb, decode_image(encode_image(rgb, ones)));
    worst_rgb = std::max(worst_rgb, e);
    if (e > 2) ++rgb_over;
  }
  return {worst_gray <= 2, "100 random images up to 128x128: max error " + std::to_string(worst_gray) +
                               " on single-plane images; RGB (adds YCbCr rounding) max " + std::to_string(worst_rgb) + ", " +
                               std::to_string(rgb_over) + "/100 RGB images above 2"};
}

Outcome plm_worked_values() {
  const PlmParams p;
  const double deltas[] = {0, 20, 40, 60, 100};
  const int expected[] = {255, 60, 40, 20, 5};
  std::array<double, 64> s{};
  for (int i = 0; i < 5; ++i) s[i] = deltas[i];
  const QuantTable t = derive_plm_table(s, p);
  std::string got;
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    got += (i ? "," : "") + std::to_string(t[i]);
    ok = ok && t[i] == expected[i];
  }
  const bool continuous = std::abs(plm_value(p.t1, p) - (p.b - p.k2 * p.t1)) < 1e-12;
  return {ok && continuous, "Q(0,20,40,60,100)=" + got + (continuous ? " continuous at T1" : " discontinuous at T1")};
}

double rel(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); }

Outcome streaming_stats() {
  std::mt19937_64 rng(0x5eed0005);
  std::uniform_int_distribution<int> side(16, 80);
  std::vector<RasterImage> corpus;
  for (int i = 0; i < 50; ++i) corpus.push_back(testing::smooth_image(rng, side(rng), side(rng), i % 5 ? 3 : 1));

  FrequencyStats single;
  std::array<std::vector<double>, 64> samples;
  for (const auto& img : corpus) {
    single.accumulate_image(img);
    const Plane y = luma_plane(img);
    for (const auto& block : partition_blocks(y, img.width(), img.height())) {
      std::array<double, 64> s{};
      for (int i = 0; i < 64; ++i) s[i] = block[i];
      const auto c = testing::direct_dct(s);
      for (int i = 0; i < 64; ++i) samples[i].push_back(c[i]);
    }
  }
  const auto summary = summarize(single.bands(0));
  double worst_oracle = 0.0;
  for (int i = 0; i < 64; ++i) worst_oracle = std::max(worst_oracle, rel(summary.stddev[i], testing::two_pass_stddev(samples[i])));

  // Ten shards merged forward, backward and in a shuffled order.
  std::vector<FrequencyStats> shards(10);
  for (std::size_t i = 0; i < corpus.size(); ++i) shards[i % 10].accumulate_image(corpus[i]);
  std::vector<int> order(10);
  std::iota(order.begin(), order.end(), 0);
  double worst_merge = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    if (pass == 1) std::reverse(order.begin(), order.end());
    if (pass == 2) std::shuffle(order.begin(), order.end(), rng);
    FrequencyStats merged;
    for (int k : order) merged.merge(shards[static_cast<std::size_t>(k)]);
    const auto m = summarize(merged.bands(0));
    for (int i = 0; i < 64; ++i) worst_merge = std::max(worst_merge, rel(m.stddev[i], summary.stddev[i]));
  }
  return {worst_oracle <= 1e-9 && worst_merge <= 1e-9,
          std::to_string(single.total_blocks()) + " blocks: oracle rel " + fmt("%.2e", worst_oracle) +
              ", merge-order rel " + fmt("%.2e", worst_merge)};
}

std::vector<RasterImage> load_corpus(const CorpusManifest& m) {
  std::vector<RasterImage> out;
  for (const auto& c : m.classes) {
    for (const auto& p : c.images) out.push_back(load_image(p));
  }
  return out;
}

Outcome sparsity_trend() {
  const auto manifest = scan_corpus(kCorpus);
  const auto images = load_corpus(manifest);
  double z[3] = {};
  const int qfs[3] = {20, 60, 80};
  for (int k = 0; k < 3; ++k) {
    const EncodeTables t{standard_table(qfs[k], TableKind::kLuma), standard_table(qfs[k], TableKind::kChroma)};
    double zeros = 0.0, total = 0.0;
    for (const auto& img : images) {
      const auto s = coefficient_sparsity(img, t);
      zeros += s.zero_fraction * static_cast<double>(s.ac_coefficients);
      total += static_cast<double>(s.ac_coefficients);
    }
    z[k] = zeros / total;
  }
  return {images.size() >= 50 && z[0] > z[1] && z[1] > z[2],
          std::to_string(images.size()) + " images: zero_fraction QF20=" + fmt("%.4f", z[0]) +
              " QF60=" + fmt("%.4f", z[1]) + " QF80=" + fmt("%.4f", z[2])};
}

struct BenchmarkRun {
  cli::BenchmarkResult result;
  std::vector<cli::TableSource> sources;
  FrequencyStats stats;
};

BenchmarkRun& corpus_benchmark() {
  static BenchmarkRun run = [] {
    BenchmarkRun r;
    const auto manifest = scan_corpus(kCorpus);
    r.stats = cli::analyze_corpus(manifest, SampleSpec{}).stats;
    cli::TableSource plm{"plm", cli::design_from_stats(r.stats, PlmParams{}, DesignOptions{})};
    r.sources = {plm, cli::resolve_table_source("same-q:4"), cli::resolve_table_source("rm-hf:3,qf:100"),
                 cli::resolve_table_source("standard-qf:100")};
    r.result = cli::run_benchmark(manifest, r.sources);
    return r;
  }();
  return run;
}

const cli::SourceSummary* summary_of(const cli::BenchmarkResult& r, const std::string& label) {
  for (const auto& s : r.summaries) {
    if (s.source == label) return &s;
  }
  return nullptr;
}

Outcome cr_ordering() {
  const auto& run = corpus_benchmark();
  std::string why;
  const bool ordered = cli::check_cr_order(run.result, {"plm", "same-q:4", "rm-hf:3,qf:100", "standard-qf:100"}, why);
  const auto* ref = summary_of(run.result, "standard-qf:100");
  const bool unit = ref != nullptr && ref->aggregate_cr == 1.0;
  std::string detail;
  for (const auto& s : run.result.summaries) detail += s.source + "=" + fmt("%.3f", s.aggregate_cr) + " ";
  if (!ordered) detail += "(" + why + ")";
  return {ordered && unit, detail};
}

Outcome psnr_report() {
  const auto& run = corpus_benchmark();
  std::string detail;
  bool complete = run.result.summaries.size() == run.sources.size();
  for (const auto& s : run.result.summaries) {
    detail += s.source + "=" + (s.mean_psnr ? fmt("%.2f", *s.mean_psnr) + "dB" : std::string("lossless")) + " ";
    complete = complete && s.images > 0 && (s.mean_psnr.has_value() || s.lossless_images == s.images);
  }
  return {complete, "mean luma PSNR: " + detail};
}

Outcome file_conformance() {
  const auto& run = corpus_benchmark();
  const auto manifest = scan_corpus(kCorpus);
  std::vector<RasterImage> images;
  for (const auto& c : manifest.classes) images.push_back(load_image(c.images.front()));
  std::mt19937_64 rng(0x5eed0009);
  images.push_back(testing::random_image(rng, 1, 1, 1));
  images.push_back(testing::random_image(rng, 13, 7, 3));
  images.push_back(testing::smooth_image(rng, 100, 33, 1));
  int files = 0, bad = 0;
  std::string first_problem;
  for (const auto& source : run.sources) {
    for (const auto& img : images) {
      const auto jpeg = encode_image(img, source.tables());
      const auto report = validate_structure(jpeg.bytes);
      ++files;
      if (!report.ok) {
        ++bad;
        if (first_problem.empty()) first_problem = source.label + ": " + report.problem;
      }
    }
  }
  return {bad == 0, std::to_string(files) + " files validated, " + std::to_string(bad) + " malformed" +
                        (first_problem.empty() ? "" : " (" + first_problem + ")") +
                        "; independent-decoder check runs as ctest interop.pillow"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "entropy round trip", 10.0, entropy_round_trip},
      {2, "DCT correctness", 5.0, dct_correctness},
      {3, "near-lossless all-1 tables", 30.0, near_lossless},
      {4, "PLM worked values", 1.0, plm_worked_values},
      {5, "streaming statistics oracle", 30.0, streaming_stats},
      {6, "sparsity trend", 60.0, sparsity_trend},
      {7, "compression-rate ordering", 120.0, cr_ordering},
      {8, "PSNR report", 120.0, psnr_report},
      {9, "file-format conformance", 5.0, file_conformance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2fs < %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " exceeded");
    std::fflush(stdout);
  }

  // Soft checks: reported, never fatal.
  try {
    const auto& run = corpus_benchmark();
    const auto* plm = summary_of(run.result, "plm");
    if (plm != nullptr) {
      std::printf("INFO soft: CR(plm) = %.3f vs QF-100 (target >= 2.0): %s\n", plm->aggregate_cr,
                  plm->aggregate_cr >= 2.0 ? "met" : "not met");
    }
    const auto s = summarize(run.stats.bands(0));
    double worst = 0.0;
    for (int i = 1; i < 64; ++i) worst = std::max(worst, std::abs(s.mean[i]) / std::max(s.stddev[i], 1e-12));
    std::printf("INFO soft: max |AC mean| / stddev over corpus bands = %.3f\n", worst);
  } catch (const std::exception& e) {
    std::printf("INFO soft checks unavailable: %s\n", e.what());
  }

  std::printf("%s: %d of %zu criteria failed\n", failed ? "FAIL" : "PASS", failed, criteria.size());
  return failed ? 1 : 0;
}
