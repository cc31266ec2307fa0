#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "parallels/corpus.hpp"
#include "parallels/letter_table.hpp"

namespace parallels {

// Two-letter reduction of a word: the ordinals of its two lowest-frequency
// letters, in textual order. combined = first * alphabet_size + second, so it
// ranges over [0, alphabet_size^2).
struct WordCode {
  uint8_t first = 0;
  uint8_t second = 0;
  uint16_t combined = 0;

  bool operator==(const WordCode&) const = default;
};

// Counts every letter of every token (final forms fold onto base letters) and
// returns a copy of `alphabet` carrying the counts. Throws ConfigError if the
// corpus has no tokens: reduction needs at least one observation.
LetterTable compute_frequencies(const Corpus& corpus, const LetterTable& alphabet);

// Selects the two letter occurrences with the lowest corpus frequency.
// Ties break by frequency first, then by position in the word, and the chosen
// pair is emitted in textual order; a repeated rare letter may be selected
// twice, and a one-letter word doubles its letter. Throws
// std::invalid_argument if the word contains no alphabet letters.
WordCode reduce_word(std::string_view word, const LetterTable& table);

// reduce_word over every token. codes[p] is tokens()[p]'s combined code.
std::vector<uint16_t> reduce_corpus(const Corpus& corpus, const LetterTable& table);

// Two-column diagnostic dump "letter<TAB>count", one line per base letter,
// ordered by descending count (ties by ordinal).
std::string dump_frequency_table(const LetterTable& table);

}  // namespace parallels
