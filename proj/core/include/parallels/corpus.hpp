#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parallels/letter_table.hpp"

namespace parallels {

struct Document {
  int32_t id = 0;
  std::string name;
  std::string text;  // raw UTF-8 file content
};

// One word occurrence. surface views into the owning Document's text, so a
// Token never outlives its Corpus. char_offset / char_len are byte positions
// into Document::text; the addressed slice reproduces surface exactly.
struct Token {
  std::string_view surface;
  int32_t doc = 0;
  uint32_t char_offset = 0;
  uint32_t char_len = 0;
};

// Immutable word-indexed view of one or more documents. Token positions are
// corpus-global: the token at global position p is tokens[p]. Documents are
// hard boundaries; nothing downstream may pair words across them.
class Corpus {
 public:
  // Tokens alias storage inside documents_, so copying would leave them
  // dangling; moves are safe (vector moves never relocate elements).
  Corpus() = default;
  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  Corpus(Corpus&&) = default;
  Corpus& operator=(Corpus&&) = default;

  // Reads every regular file in the directory (lexicographic name order, one
  // Document per file). Throws ConfigError for a missing directory or when no
  // regular files are found, IoError for unreadable files or invalid UTF-8.
  static Corpus load(const std::filesystem::path& directory,
                     const LetterTable& alphabet);

  // Builds a corpus from in-memory (name, text) pairs, in the given order.
  static Corpus from_texts(std::vector<std::pair<std::string, std::string>> docs,
                           const LetterTable& alphabet);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }

  const Token& token(uint32_t pos) const { return tokens_[pos]; }
  int32_t doc_of(uint32_t pos) const { return tokens_[pos].doc; }

  // Global position of the first token of a document (== doc_start(id+1) for
  // an empty document). doc_start(documents().size()) == size().
  uint32_t doc_start(int32_t doc_id) const { return doc_starts_[doc_id]; }
  uint32_t doc_size(int32_t doc_id) const {
    return doc_starts_[doc_id + 1] - doc_starts_[doc_id];
  }

  // Document-relative word position.
  uint32_t rel_pos(uint32_t pos) const {
    return pos - doc_starts_[tokens_[pos].doc];
  }

  // Surfaces of [first, last] joined with single spaces.
  std::string join_span(uint32_t first, uint32_t last) const;

 private:
  static Corpus build(std::vector<Document> docs, const LetterTable& alphabet);

  std::vector<Document> documents_;
  std::vector<Token> tokens_;
  std::vector<uint32_t> doc_starts_;
};

// Splits text into maximal runs of alphabet letters; every other character
// (including any whitespace and punctuation) separates tokens. The returned
// Tokens view into `text` and carry doc id `doc`. Throws std::invalid_argument
// on invalid UTF-8, with the byte offset in the message.
std::vector<Token> tokenize(std::string_view text, const LetterTable& alphabet,
                            int32_t doc = 0);

// The (filename, contents) pairs Corpus::load would build documents from:
// every regular non-dotfile in the directory, lexicographic name order, BOM
// stripped. Throws ConfigError for a missing directory or an empty listing,
// IoError for unreadable files.
std::vector<std::pair<std::string, std::string>> read_text_directory(
    const std::filesystem::path& directory);

}  // namespace parallels
