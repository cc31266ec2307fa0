// Microbenchmarks for the pipeline stages plus one end-to-end run. Fixtures
// are built once and shared; rates are reported as items processed so the
// numbers stay comparable across corpus sizes.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "parallels/cluster.hpp"
#include "parallels/corpus.hpp"
#include "parallels/engine.hpp"
#include "parallels/index.hpp"
#include "parallels/reduction.hpp"
#include "parallels/skipgram.hpp"
#include "parallels/utf8.hpp"
#include "parallels/validate.hpp"
#include "support/planting.hpp"
#include "support/tempdir.hpp"
#include "support/text.hpp"

using namespace parallels;
using namespace testsupport;

namespace {

// A 50k-word two-document corpus with 20 planted pairs, the shared subject of
// the stage benchmarks.
struct BenchCorpus {
  Corpus corpus;
  LetterTable table;
  std::vector<uint16_t> codes;

  BenchCorpus() : table(reference_table()) {
    std::mt19937 rng(90001);
    const LetterTable reference = reference_table();
    std::vector<std::string> a_words, b_words;
    for (int p = 0; p < 20; ++p) {
      const auto pair = make_planted_pair(rng, reference, 30, {2, 4, 2});
      append_passage(a_words, pair.base, 1200, rng);
      append_passage(b_words, pair.match, 1200, rng);
    }
    corpus = Corpus::from_texts(
        {{"a.txt", join_words(a_words)}, {"b.txt", join_words(b_words)}},
        LetterTable::hebrew());
    table = compute_frequencies(corpus, LetterTable::hebrew());
    codes = reduce_corpus(corpus, table);
  }
};

const BenchCorpus& bench_corpus() {
  static BenchCorpus fixture;
  return fixture;
}

void BM_reduce_word(benchmark::State& state) {
  const LetterTable table = reference_table();
  std::mt19937 rng(7);
  std::vector<std::string> words = random_words(rng, 1024);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_word(words[i], table));
    i = (i + 1) & 1023;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_reduce_word);

void BM_reduce_corpus(benchmark::State& state) {
  const BenchCorpus& fx = bench_corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(reduce_corpus(fx.corpus, fx.table));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(fx.corpus.size()));
}
BENCHMARK(BM_reduce_corpus);

void BM_encode_key(benchmark::State& state) {
  const KeyEncoder enc(22, SkipGramConfig{4, 5});
  std::mt19937 rng(11);
  uint16_t kept[1024][4];
  for (auto& k : kept)
    for (auto& c : k) c = static_cast<uint16_t>(rng() % 484);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enc.encode(kept[i]));
    i = (i + 1) & 1023;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_encode_key);

void BM_generate_skipgrams(benchmark::State& state) {
  const BenchCorpus& fx = bench_corpus();
  const KeyEncoder enc(fx.table.alphabet_size(), SkipGramConfig{4, 5});
  std::vector<SkipGram> grams;
  uint32_t pos = 0;
  const uint32_t wrap = static_cast<uint32_t>(fx.corpus.size()) - 8;
  for (auto _ : state) {
    grams.clear();
    generate_skipgrams(pos, fx.codes, fx.corpus, enc, grams);
    benchmark::DoNotOptimize(grams.data());
    pos = pos + 1 == wrap ? 0 : pos + 1;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_generate_skipgrams);

void BM_index_build(benchmark::State& state) {
  const BenchCorpus& fx = bench_corpus();
  const KeyEncoder enc(fx.table.alphabet_size(), SkipGramConfig{4, 5});
  for (auto _ : state) {
    const SkipGramIndex index =
        SkipGramIndex::build(fx.corpus, fx.codes, enc);
    benchmark::DoNotOptimize(index.entry_count());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(fx.corpus.size()));
}
BENCHMARK(BM_index_build);

void BM_collect_matches(benchmark::State& state) {
  const BenchCorpus& fx = bench_corpus();
  const KeyEncoder enc(fx.table.alphabet_size(), SkipGramConfig{4, 5});
  const SkipGramIndex index = SkipGramIndex::build(fx.corpus, fx.codes, enc);
  for (auto _ : state) {
    const auto points = collect_matches(index, 20);
    benchmark::DoNotOptimize(points.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(fx.corpus.size()));
}
BENCHMARK(BM_collect_matches);

void BM_cluster_passages(benchmark::State& state) {
  const BenchCorpus& fx = bench_corpus();
  const KeyEncoder enc(fx.table.alphabet_size(), SkipGramConfig{4, 5});
  const SkipGramIndex index = SkipGramIndex::build(fx.corpus, fx.codes, enc);
  const auto points = collect_matches(index, 20);
  for (auto _ : state) {
    const auto pairs = cluster_passages(points, ClusterParams{});
    benchmark::DoNotOptimize(pairs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(points.size()));
}
BENCHMARK(BM_cluster_passages);

void BM_levenshtein_bounded(benchmark::State& state) {
  std::mt19937 rng(13);
  const auto base = join_words(random_words(rng, 25));
  auto variation = random_words(rng, 25);
  variation[7] = random_word(rng);
  variation[19] = random_word(rng);
  const auto other = join_words(variation);
  const auto a = utf8::decode_all(base);
  const auto b = utf8::decode_all(other);
  const int limit = static_cast<int>(0.30 * a.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(levenshtein_bounded(a, b, limit));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_levenshtein_bounded);

void BM_pipeline(benchmark::State& state) {
  std::mt19937 rng(90002);
  const LetterTable reference = reference_table();
  std::vector<std::string> a_words, b_words;
  for (int p = 0; p < 20; ++p) {
    const auto pair = make_planted_pair(rng, reference, 30, {2, 4, 2});
    append_passage(a_words, pair.base, 2470, rng);
    append_passage(b_words, pair.match, 2470, rng);
  }
  const TempDir dir;
  dir.file("a.txt", join_words(a_words));
  dir.file("b.txt", join_words(b_words));
  Config cfg;
  cfg.input_dir = dir.path;
  cfg.deterministic = true;
  cfg.max_iterations = static_cast<int>(state.range(0));
  size_t words = a_words.size() + b_words.size();
  for (auto _ : state) {
    const Report report = run_pipeline(cfg);
    benchmark::DoNotOptimize(report.records.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(words));
}
BENCHMARK(BM_pipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
