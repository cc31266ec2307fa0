#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parallels/cluster.hpp"
#include "parallels/corpus.hpp"
#include "parallels/reduction.hpp"
#include "parallels/skipgram.hpp"

namespace parallels {

// One learned word equivalence. Surfaces are normalized (final letter forms
// folded) and stored canonically, word_a < word_b in byte order.
struct SubstitutionEntry {
  std::string word_a;
  std::string word_b;
  uint32_t count = 0;
};

// The lexical substitution list: canonical entries, looked up symmetrically
// (partners of a word are every word it is paired with, either side).
class SubstitutionList {
 public:
  SubstitutionList() = default;
  // Canonicalizes each entry (orders the words, drops self-pairs), coalesces
  // duplicates keeping the highest count, sorts by (word_a, word_b).
  explicit SubstitutionList(std::vector<SubstitutionEntry> entries);

  const std::vector<SubstitutionEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  // Partners of word, highest count first, ties in byte order.
  std::vector<std::pair<std::string_view, uint32_t>> partners(
      std::string_view word) const;

  // One entry per line, "word_a<TAB>word_b<TAB>count". Throws IoError when
  // the file cannot be written / read, ConfigError on malformed content.
  void save(const std::filesystem::path& path) const;
  static SubstitutionList load(const std::filesystem::path& path);

 private:
  std::vector<SubstitutionEntry> entries_;
};

// Union of two lists; a pair present in both keeps the higher count.
SubstitutionList merge_lists(const SubstitutionList& a,
                             const SubstitutionList& b);

// Aligns the two passages word by word (unit-cost edit script over combined
// code equality, ties preferring substitution, then base-side deletion) and
// returns the normalized surface pair of every isolated one-word
// substitution: a substituted column whose neighbors on both sides are
// matching columns or passage boundaries. Runs of two or more consecutive
// non-match columns yield nothing. Passages longer than 2048 words are
// skipped (empty result).
std::vector<std::pair<std::string, std::string>> extract_discrepancies(
    const PassagePair& pair, const Corpus& corpus,
    const std::vector<uint16_t>& codes, const LetterTable& table);

// Tallies canonical pairs and keeps those reaching freq_threshold.
SubstitutionList build_substitution_list(
    const std::vector<std::pair<std::string, std::string>>& discrepancies,
    int freq_threshold);

// Codes of the word's partners, at most max_alternates of them (partners
// ranked by count, ties in byte order). Empty when the word has no entry.
std::vector<WordCode> alternate_reduction(std::string_view word,
                                          const SubstitutionList& list,
                                          const LetterTable& table,
                                          int max_alternates = 3);

// alternate_reduction over every token: alternates[pos] holds the distinct
// partner codes of tokens()[pos] that differ from its own code. Returns an
// empty AlternateCodes when the list is empty.
AlternateCodes compute_alternates(const Corpus& corpus,
                                  const SubstitutionList& list,
                                  const LetterTable& table,
                                  int max_alternates = 3);

// One row of the iteration log.
struct IterationStats {
  int iteration = 0;         // 1-based
  size_t list_entries = 0;   // substitution entries in force this iteration
  uint64_t total_words = 0;  // sum over pairs of max(base_len, match_len)
  size_t pair_count = 0;
};

uint64_t total_passage_words(const std::vector<PassagePair>& pairs);

struct RunOptions {
  int freq_threshold = 2;
  int max_iterations = 4;
  uint64_t gain_epsilon = 0;  // stop when an iteration adds <= this many words
  int max_alternates = 3;
  SubstitutionList seed;  // entries in force from iteration 1 on
};

struct IterationOutcome {
  std::vector<PassagePair> pairs;  // the final iteration's passages
  SubstitutionList list;           // final learned list, seed merged in
  std::vector<IterationStats> stats;
};

// Runs one full passage search under the given alternates (null when no list
// is in force) and returns the merged passage pairs.
using SearchFn = std::function<std::vector<PassagePair>(const AlternateCodes*)>;

// The learn-and-repeat loop: search, harvest discrepancies from the found
// passages, rebuild the list, and search again with the widened reductions,
// until an iteration gains no more than gain_epsilon words or max_iterations
// is reached. The stats carry one row per executed iteration.
IterationOutcome run_iterations(const Corpus& corpus,
                                const std::vector<uint16_t>& codes,
                                const LetterTable& table, const SearchFn& search,
                                const RunOptions& opts);

}  // namespace parallels
