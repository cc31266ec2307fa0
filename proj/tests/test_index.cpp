#include <doctest.h>

#include <fstream>
#include <random>
#include <vector>

#include "parallels/errors.hpp"
#include "parallels/index.hpp"
#include "parallels/reduction.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "support/text.hpp"

using namespace parallels;
using testsupport::corpus_of;
using testsupport::oracle_query;
using testsupport::random_words;
using testsupport::reference_table;
using testsupport::TempDir;

namespace {

struct Fixture {
  Corpus corpus;
  LetterTable table;
  std::vector<uint16_t> codes;
  KeyEncoder enc{22, {4, 5}};

  explicit Fixture(std::vector<std::vector<std::string>> docs)
      : corpus(corpus_of(std::move(docs))), table(reference_table()),
        codes(reduce_corpus(corpus, table)) {}
};

bool same_points(const std::vector<MatchPoint>& a,
                 const std::vector<MatchPoint>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].base_pos != b[i].base_pos || a[i].match_pos != b[i].match_pos ||
        a[i].base_doc != b[i].base_doc || a[i].match_doc != b[i].match_doc ||
        a[i].multiplicity != b[i].multiplicity ||
        a[i].base_width != b[i].base_width ||
        a[i].match_width != b[i].match_width)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("query agrees with the linear-scan reference on random corpora") {
  std::mt19937 rng(404);
  for (int round = 0; round < 6; ++round) {
    std::vector<std::vector<std::string>> docs;
    const int doc_count = 1 + static_cast<int>(rng() % 3);
    for (int d = 0; d < doc_count; ++d)
      docs.push_back(random_words(rng, 40 + rng() % 60));
    // Plant a few repeats so matches actually occur.
    for (int r = 0; r < 6; ++r) {
      auto& src = docs[rng() % docs.size()];
      auto& dst = docs[rng() % docs.size()];
      if (src.size() < 12) continue;
      const size_t from = rng() % (src.size() - 8);
      const size_t to = rng() % (dst.size() - 1);
      dst.insert(dst.begin() + static_cast<ptrdiff_t>(to),
                 src.begin() + static_cast<ptrdiff_t>(from),
                 src.begin() + static_cast<ptrdiff_t>(from + 6 + rng() % 3));
    }

    Fixture f(docs);
    const uint32_t vicinity = rng() % 3 == 0 ? 0 : rng() % 25;
    const SkipGramIndex index =
        SkipGramIndex::build(f.corpus, f.codes, f.enc);

    for (uint32_t pos = 0; pos < f.corpus.size(); ++pos) {
      std::vector<MatchPoint> got;
      index.query(pos, vicinity, got);
      const auto want =
          oracle_query(f.corpus, f.codes, f.enc, nullptr, 8, 0,
                       static_cast<uint32_t>(f.corpus.size()), pos, vicinity);
      REQUIRE_MESSAGE(same_points(got, want),
                      "round " << round << " pos " << pos << " vicinity "
                               << vicinity);
    }
  }
}

TEST_CASE("matching positions share the full reduced pattern") {
  std::mt19937 rng(405);
  std::vector<std::string> words = random_words(rng, 120);
  // Plant an exact repeat of a 6-word run.
  const std::vector<std::string> run(words.begin() + 10, words.begin() + 16);
  words.insert(words.end(), run.begin(), run.end());
  Fixture f({words});
  const SkipGramIndex index = SkipGramIndex::build(f.corpus, f.codes, f.enc);

  std::vector<MatchPoint> hits;
  index.query(10, 0, hits);
  REQUIRE(!hits.empty());
  bool found_plant = false;
  for (const MatchPoint& mp : hits) {
    if (mp.match_pos == 120) found_plant = true;
  }
  CHECK(found_plant);
}

TEST_CASE("self and near positions are excluded by vicinity") {
  std::mt19937 rng(406);
  auto words = random_words(rng, 30);
  // Duplicate the opening 5 words at position 10.
  for (int i = 0; i < 5; ++i) words[10 + i] = words[i];
  Fixture f({words});
  const SkipGramIndex index = SkipGramIndex::build(f.corpus, f.codes, f.enc);

  std::vector<MatchPoint> near;
  index.query(0, 20, near);
  CHECK(near.empty());  // the copy at distance 10 is inside the vicinity

  std::vector<MatchPoint> far;
  index.query(0, 10, far);
  bool hit10 = false;
  for (const MatchPoint& mp : far) hit10 = hit10 || mp.match_pos == 10;
  CHECK(hit10);
}

TEST_CASE("the match relation is symmetric without a vicinity window") {
  std::mt19937 rng(407);
  auto words = random_words(rng, 80);
  words.insert(words.end(), words.begin() + 20, words.begin() + 30);
  Fixture f({words});
  const SkipGramIndex index = SkipGramIndex::build(f.corpus, f.codes, f.enc);

  for (uint32_t pos = 0; pos < f.corpus.size(); ++pos) {
    std::vector<MatchPoint> from;
    index.query(pos, 0, from);
    for (const MatchPoint& mp : from) {
      std::vector<MatchPoint> back;
      index.query(mp.match_pos, 0, back);
      bool found = false;
      for (const MatchPoint& b : back) found = found || b.match_pos == pos;
      CHECK_MESSAGE(found, "no return edge " << mp.match_pos << " -> " << pos);
    }
  }
}

TEST_CASE("a restricted build range indexes only that range") {
  std::mt19937 rng(408);
  auto words = random_words(rng, 60);
  for (int i = 0; i < 6; ++i) words[40 + i] = words[i];
  Fixture f({words});

  const SkipGramIndex index =
      SkipGramIndex::build(f.corpus, f.codes, f.enc, nullptr, 8, 0, 20);
  CHECK(index.index_begin() == 0);
  CHECK(index.index_end() == 20);

  std::vector<MatchPoint> hits;
  index.query(40, 0, hits);  // query from outside the indexed range
  bool found0 = false;
  for (const MatchPoint& mp : hits) {
    CHECK(mp.match_pos < 20);
    found0 = found0 || mp.match_pos == 0;
  }
  CHECK(found0);

  const auto want = oracle_query(f.corpus, f.codes, f.enc, nullptr, 8, 0, 20,
                                 40, 0);
  CHECK(same_points(hits, want));
}

TEST_CASE("an index round-trips through its binary file") {
  std::mt19937 rng(409);
  auto words = random_words(rng, 150);
  words.insert(words.end(), words.begin(), words.begin() + 20);
  Fixture f({words});
  const SkipGramIndex built = SkipGramIndex::build(f.corpus, f.codes, f.enc);

  TempDir dir;
  const auto file = dir.path / "corpus.idx";
  built.save(file);
  const SkipGramIndex loaded =
      SkipGramIndex::load(file, f.corpus, f.codes, f.enc);

  CHECK(loaded.entry_count() == built.entry_count());
  CHECK(loaded.index_begin() == built.index_begin());
  CHECK(loaded.index_end() == built.index_end());

  for (uint32_t pos = 0; pos < f.corpus.size(); ++pos) {
    std::vector<MatchPoint> a, b;
    built.query(pos, 5, a);
    loaded.query(pos, 5, b);
    REQUIRE(same_points(a, b));
  }
}

TEST_CASE("loading rejects a mismatched corpus or tampered header") {
  std::mt19937 rng(410);
  Fixture f({random_words(rng, 50)});
  const SkipGramIndex built = SkipGramIndex::build(f.corpus, f.codes, f.enc);

  TempDir dir;
  const auto file = dir.path / "corpus.idx";
  built.save(file);

  SUBCASE("different token count") {
    Fixture other({random_words(rng, 49)});
    CHECK_THROWS_AS(SkipGramIndex::load(file, other.corpus, other.codes, f.enc),
                    ConfigError);
  }
  SUBCASE("different skip-gram shape") {
    const KeyEncoder enc3(22, {3, 4});
    CHECK_THROWS_AS(SkipGramIndex::load(file, f.corpus, f.codes, enc3),
                    ConfigError);
  }
  SUBCASE("corrupted magic") {
    std::fstream io(file, std::ios::in | std::ios::out | std::ios::binary);
    io.seekp(0);
    io.write("XXXX", 4);
    io.close();
    CHECK_THROWS_AS(SkipGramIndex::load(file, f.corpus, f.codes, f.enc),
                    ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(
        SkipGramIndex::load(dir.path / "absent.idx", f.corpus, f.codes, f.enc),
        IoError);
  }
}

TEST_CASE("queries honor alternates on both sides") {
  // Two far-apart windows equal except one word whose codes are bridged by
  // an alternate: without alternates no match, with them a match.
  std::mt19937 rng(411);
  auto words = random_words(rng, 60);
  for (int i = 0; i < 5; ++i) words[40 + i] = words[i];
  Fixture plain({words});

  // Give position 42 a different word, then bridge it via alternates.
  const uint16_t original_code = plain.codes[2];
  std::vector<uint16_t> codes = plain.codes;
  codes[42] = (codes[42] + 7) % 484;
  if (codes[42] == original_code) codes[42] = (codes[42] + 1) % 484;

  const SkipGramIndex no_alt =
      SkipGramIndex::build(plain.corpus, codes, plain.enc);
  std::vector<MatchPoint> without;
  no_alt.query(40, 0, without);
  bool direct = false;
  for (const MatchPoint& mp : without) direct = direct || mp.match_pos == 0;
  // One substituted word inside the window is already tolerated by the
  // variant that skips it; alternates must upgrade that partial agreement to
  // agreement on every variant.
  CHECK(direct);
  AlternateCodes alternates(codes.size());
  alternates[42] = {original_code};
  const SkipGramIndex with_alt =
      SkipGramIndex::build(plain.corpus, codes, plain.enc, &alternates, 8);
  std::vector<MatchPoint> with;
  with_alt.query(40, 0, with);

  uint16_t mult_without = 0, mult_with = 0;
  for (const MatchPoint& mp : without)
    if (mp.match_pos == 0) mult_without = mp.multiplicity;
  for (const MatchPoint& mp : with)
    if (mp.match_pos == 0) mult_with = mp.multiplicity;
  CHECK(mult_with > mult_without);

  const auto want = oracle_query(plain.corpus, codes, plain.enc, &alternates,
                                 8, 0, static_cast<uint32_t>(words.size()),
                                 40, 0);
  CHECK(same_points(with, want));
}
