#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parallels {

// Alphabet description plus per-letter corpus frequencies.
//
// Ordinals are assigned by the alphabetical order of the base letters passed
// to the constructor, not by frequency rank, so encoded keys stay comparable
// across corpora with different letter statistics. Final (word-ending) letter
// forms fold onto their base letter: they are accepted as input letters and
// share the base letter's ordinal and frequency bucket.
class LetterTable {
 public:
  // base_letters: code points in alphabetical order; ordinal i = base_letters[i].
  // final_forms: (final form, base form) pairs; each base must be in base_letters.
  LetterTable(std::vector<char32_t> base_letters,
              std::vector<std::pair<char32_t, char32_t>> final_forms);

  // The 22-letter Hebrew alphabet with the five final forms folded.
  static LetterTable hebrew();

  int alphabet_size() const { return static_cast<int>(letters_.size()); }

  bool is_letter(char32_t cp) const {
    return cp >= window_lo_ && cp <= window_hi_ &&
           ordinal_of_[cp - window_lo_] >= 0;
  }

  // Ordinal of cp (finals fold to the base letter's ordinal), or -1.
  int ordinal(char32_t cp) const {
    if (cp < window_lo_ || cp > window_hi_) return -1;
    return ordinal_of_[cp - window_lo_];
  }

  // Base-form code point for an ordinal.
  char32_t letter(int ordinal) const { return letters_[ordinal]; }

  // Maps a final form to its base form; other code points pass through.
  char32_t fold(char32_t cp) const;

  uint64_t frequency(int ordinal) const { return freq_[ordinal]; }
  const std::vector<uint64_t>& frequencies() const { return freq_; }
  void set_frequencies(std::vector<uint64_t> freq);

 private:
  std::vector<char32_t> letters_;
  std::vector<std::pair<char32_t, char32_t>> finals_;
  std::vector<uint64_t> freq_;
  // Dense ordinal lookup over [window_lo_, window_hi_].
  char32_t window_lo_ = 0;
  char32_t window_hi_ = 0;
  std::vector<int16_t> ordinal_of_;
};

// Replaces final letter forms with their base forms; all other characters are
// unchanged. Input must be valid UTF-8.
std::string normalize_letters(std::string_view word, const LetterTable& table);

}  // namespace parallels
