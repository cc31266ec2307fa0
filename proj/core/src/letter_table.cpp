#include "parallels/letter_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "parallels/utf8.hpp"

namespace parallels {

LetterTable::LetterTable(std::vector<char32_t> base_letters,
                         std::vector<std::pair<char32_t, char32_t>> final_forms)
    : letters_(std::move(base_letters)), finals_(std::move(final_forms)) {
  if (letters_.empty()) throw std::invalid_argument("empty alphabet");

  window_lo_ = window_hi_ = letters_[0];
  for (const char32_t cp : letters_) {
    window_lo_ = std::min(window_lo_, cp);
    window_hi_ = std::max(window_hi_, cp);
  }
  for (const auto& [fin, base] : finals_) {
    window_lo_ = std::min(window_lo_, fin);
    window_hi_ = std::max(window_hi_, fin);
    if (std::find(letters_.begin(), letters_.end(), base) == letters_.end())
      throw std::invalid_argument("final form maps outside the alphabet");
  }

  ordinal_of_.assign(window_hi_ - window_lo_ + 1, -1);
  for (size_t i = 0; i < letters_.size(); ++i)
    ordinal_of_[letters_[i] - window_lo_] = static_cast<int16_t>(i);
  for (const auto& [fin, base] : finals_)
    ordinal_of_[fin - window_lo_] =
        ordinal_of_[base - window_lo_];

  freq_.assign(letters_.size(), 0);
}

LetterTable LetterTable::hebrew() {
  std::vector<char32_t> base = {
      U'א', U'ב', U'ג', U'ד', U'ה', U'ו', U'ז', U'ח', U'ט', U'י', U'כ',
      U'ל', U'מ', U'נ', U'ס', U'ע', U'פ', U'צ', U'ק', U'ר', U'ש', U'ת'};
  std::vector<std::pair<char32_t, char32_t>> finals = {
      {U'ך', U'כ'}, {U'ם', U'מ'}, {U'ן', U'נ'}, {U'ף', U'פ'}, {U'ץ', U'צ'}};
  return LetterTable(std::move(base), std::move(finals));
}

char32_t LetterTable::fold(char32_t cp) const {
  for (const auto& [fin, base] : finals_)
    if (fin == cp) return base;
  return cp;
}

void LetterTable::set_frequencies(std::vector<uint64_t> freq) {
  if (freq.size() != letters_.size())
    throw std::invalid_argument("frequency vector size mismatch");
  freq_ = std::move(freq);
}

std::string normalize_letters(std::string_view word, const LetterTable& table) {
  std::string out;
  out.reserve(word.size());
  size_t pos = 0;
  while (pos < word.size()) {
    const int32_t cp = utf8::decode(word, pos);
    if (cp < 0)
      throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(pos));
    utf8::encode(table.fold(static_cast<char32_t>(cp)), out);
  }
  return out;
}

}  // namespace parallels
