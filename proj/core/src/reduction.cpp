#include "parallels/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "parallels/errors.hpp"
#include "parallels/utf8.hpp"

namespace parallels {

LetterTable compute_frequencies(const Corpus& corpus,
                                const LetterTable& alphabet) {
  if (corpus.tokens().empty())
    throw ConfigError("cannot compute letter frequencies: corpus has no words");

  std::vector<uint64_t> counts(alphabet.alphabet_size(), 0);
  for (const Token& token : corpus.tokens()) {
    size_t pos = 0;
    while (pos < token.surface.size()) {
      const int32_t cp = utf8::decode(token.surface, pos);
      // Tokens are letter runs by construction, so cp is a letter.
      counts[alphabet.ordinal(static_cast<char32_t>(cp))]++;
    }
  }

  LetterTable table = alphabet;
  table.set_frequencies(std::move(counts));
  return table;
}

WordCode reduce_word(std::string_view word, const LetterTable& table) {
  // Running best two occurrences under the key (frequency, position).
  // npos marks "unset".
  constexpr int kUnset = -1;
  uint64_t freq1 = 0, freq2 = 0;
  int idx1 = kUnset, idx2 = kUnset;
  int ord1 = 0, ord2 = 0;

  int idx = 0;
  size_t pos = 0;
  while (pos < word.size()) {
    const int32_t cp = utf8::decode(word, pos);
    if (cp < 0)
      throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(pos));
    const int ord = table.ordinal(static_cast<char32_t>(cp));
    if (ord < 0) continue;  // skip non-letters defensively
    const uint64_t freq = table.frequency(ord);

    // Insertion position within the best-two, strict ordering on (freq, idx);
    // idx increases monotonically so later occurrences lose all ties.
    if (idx1 == kUnset || freq < freq1) {
      freq2 = freq1;
      idx2 = idx1;
      ord2 = ord1;
      freq1 = freq;
      idx1 = idx;
      ord1 = ord;
    } else if (idx2 == kUnset || freq < freq2) {
      freq2 = freq;
      idx2 = idx;
      ord2 = ord;
    }
    ++idx;
  }

  if (idx1 == kUnset)
    throw std::invalid_argument("cannot reduce a word with no alphabet letters");
  if (idx2 == kUnset) {  // one-letter word: double the letter
    idx2 = idx1 + 1;
    ord2 = ord1;
  }

  WordCode code;
  if (idx1 <= idx2) {
    code.first = static_cast<uint8_t>(ord1);
    code.second = static_cast<uint8_t>(ord2);
  } else {
    code.first = static_cast<uint8_t>(ord2);
    code.second = static_cast<uint8_t>(ord1);
  }
  code.combined = static_cast<uint16_t>(code.first * table.alphabet_size() +
                                        code.second);
  return code;
}

std::vector<uint16_t> reduce_corpus(const Corpus& corpus,
                                    const LetterTable& table) {
  std::vector<uint16_t> codes;
  codes.reserve(corpus.size());
  for (const Token& token : corpus.tokens())
    codes.push_back(reduce_word(token.surface, table).combined);
  return codes;
}

std::string dump_frequency_table(const LetterTable& table) {
  std::vector<int> ordinals(table.alphabet_size());
  std::iota(ordinals.begin(), ordinals.end(), 0);
  std::stable_sort(ordinals.begin(), ordinals.end(), [&](int a, int b) {
    return table.frequency(a) > table.frequency(b);
  });

  std::string out;
  for (const int ord : ordinals) {
    utf8::encode(table.letter(ord), out);
    out.push_back('\t');
    out += std::to_string(table.frequency(ord));
    out.push_back('\n');
  }
  return out;
}

}  // namespace parallels
