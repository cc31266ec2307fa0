#include <doctest.h>

#include <filesystem>
#include <string>

#include "parallels/corpus.hpp"
#include "parallels/errors.hpp"
#include "support/tempdir.hpp"
#include "support/text.hpp"

using namespace parallels;
using testsupport::TempDir;
namespace fs = std::filesystem;

TEST_CASE("tokenize splits on anything outside the alphabet") {
  const LetterTable table = LetterTable::hebrew();
  const std::string text = "שלום, עולם!  טוב\nמאד";
  const auto tokens = tokenize(text, table);
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0].surface == "שלום");
  CHECK(tokens[1].surface == "עולם");
  CHECK(tokens[2].surface == "טוב");
  CHECK(tokens[3].surface == "מאד");

  for (const Token& t : tokens)
    CHECK(text.substr(t.char_offset, t.char_len) == t.surface);
}

TEST_CASE("tokenize keeps final letter forms in the surface") {
  const auto tokens = tokenize("שלום", LetterTable::hebrew());
  REQUIRE(tokens.size() == 1);
  CHECK(tokens[0].surface == "שלום");  // ends with final mem
}

TEST_CASE("tokenize ignores latin letters, digits and punctuation") {
  const auto tokens = tokenize("abc שלום 123 עולם-טוב", LetterTable::hebrew());
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].surface == "שלום");
  CHECK(tokens[1].surface == "עולם");
  CHECK(tokens[2].surface == "טוב");
}

TEST_CASE("tokenize reports the byte offset of invalid UTF-8") {
  const std::string bad = std::string("של") + char(0xC3);
  CHECK_THROWS_WITH_AS(tokenize(bad, LetterTable::hebrew()),
                       doctest::Contains("4"), std::invalid_argument);
}

TEST_CASE("document boundaries and relative positions") {
  const Corpus corpus = testsupport::corpus_of(
      {{"אבג", "דהו"}, {}, {"זחט", "יכל", "מנס"}});

  CHECK(corpus.size() == 5);
  CHECK(corpus.documents().size() == 3);
  CHECK(corpus.doc_start(0) == 0);
  CHECK(corpus.doc_start(1) == 2);
  CHECK(corpus.doc_start(2) == 2);
  CHECK(corpus.doc_start(3) == 5);
  CHECK(corpus.doc_size(0) == 2);
  CHECK(corpus.doc_size(1) == 0);
  CHECK(corpus.doc_size(2) == 3);
  CHECK(corpus.doc_of(1) == 0);
  CHECK(corpus.doc_of(2) == 2);
  CHECK(corpus.rel_pos(0) == 0);
  CHECK(corpus.rel_pos(1) == 1);
  CHECK(corpus.rel_pos(2) == 0);
  CHECK(corpus.rel_pos(4) == 2);
}

TEST_CASE("join_span rebuilds text with single spaces") {
  const Corpus corpus = testsupport::corpus_of({{"אבג", "דהו", "זחט"}});
  CHECK(corpus.join_span(0, 2) == "אבג דהו זחט");
  CHECK(corpus.join_span(1, 1) == "דהו");
}

TEST_CASE("load reads files in name order and skips dotfiles") {
  TempDir dir;
  dir.file("b.txt", "שלום עולם");
  dir.file("a.txt", "אבג דהו");
  dir.file(".hidden", "שלום");
  fs::create_directories(dir.path / "sub");

  const Corpus corpus = Corpus::load(dir.path, LetterTable::hebrew());
  REQUIRE(corpus.documents().size() == 2);
  CHECK(corpus.documents()[0].name == "a.txt");
  CHECK(corpus.documents()[1].name == "b.txt");
  CHECK(corpus.size() == 4);
}

TEST_CASE("load strips a UTF-8 byte order mark") {
  TempDir dir;
  dir.file("a.txt", "\xEF\xBB\xBFשלום");
  const Corpus corpus = Corpus::load(dir.path, LetterTable::hebrew());
  REQUIRE(corpus.size() == 1);
  CHECK(corpus.token(0).char_offset == 0);
  CHECK(corpus.token(0).surface == "שלום");
}

TEST_CASE("load rejects a missing or empty directory") {
  TempDir dir;
  CHECK_THROWS_AS(Corpus::load(dir.path / "nope", LetterTable::hebrew()),
                  ConfigError);
  CHECK_THROWS_AS(Corpus::load(dir.path, LetterTable::hebrew()), ConfigError);
}

TEST_CASE("load rejects invalid UTF-8 content") {
  TempDir dir;
  dir.file("a.txt", std::string("של") + char(0xFF));
  CHECK_THROWS_AS(Corpus::load(dir.path, LetterTable::hebrew()), IoError);
}

TEST_CASE("token byte ranges address the owning document text") {
  TempDir dir;
  dir.file("a.txt", "  שלום,\nעולם  ");
  const Corpus corpus = Corpus::load(dir.path, LetterTable::hebrew());
  REQUIRE(corpus.size() == 2);
  const Document& doc = corpus.documents()[0];
  for (uint32_t p = 0; p < corpus.size(); ++p) {
    const Token& t = corpus.token(p);
    CHECK(doc.text.substr(t.char_offset, t.char_len) == t.surface);
  }
}
