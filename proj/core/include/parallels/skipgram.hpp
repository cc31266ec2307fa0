#pragma once

#include <cstdint>
#include <vector>

#include "parallels/corpus.hpp"

namespace parallels {

// n words kept out of an m-word window, m = n + 1. Variant v in [0, n-2]
// drops window position v+1 (the head word is never dropped); variant n-1 is
// the contiguous n-gram, i.e. the window's last position is dropped.
struct SkipGramConfig {
  int n = 4;
  int m = 5;
};

// Collision-free integer key. head is the first kept word's combined code and
// selects one of alphabet_size^2 sub-indexes; tail packs the remaining n-1
// codes as base-alphabet_size^2 digits, most significant first.
struct SkipGramKey {
  uint16_t head = 0;
  uint64_t tail = 0;

  bool operator==(const SkipGramKey&) const = default;
  bool operator<(const SkipGramKey& o) const {
    return head != o.head ? head < o.head : tail < o.tail;
  }
};

// One generated skip-gram at a position.
struct SkipGram {
  SkipGramKey key;
  uint8_t variant = 0;
};

// A stored skip-gram occurrence (the index's payload).
struct SkipGramOccurrence {
  uint32_t pos = 0;  // window start, corpus-global
  uint16_t doc = 0;
  uint8_t variant = 0;
};

// Number of words the variant's window covers, counted through its last kept
// word: the contiguous variant ends at pos + n - 1, every skipping variant
// keeps the window's last word and ends at pos + m - 1.
inline int variant_width(int variant, const SkipGramConfig& cfg) {
  return variant == cfg.n - 1 ? cfg.n : cfg.m;
}

// Packs and unpacks keys. Digit multipliers are precomputed per tail slot so
// encoding is table lookups and adds.
class KeyEncoder {
 public:
  KeyEncoder(int alphabet_size, SkipGramConfig cfg);

  // kept[0..n-1]: combined codes of the kept words, in textual order.
  SkipGramKey encode(const uint16_t* kept) const {
    SkipGramKey key;
    key.head = kept[0];
    uint64_t tail = 0;
    for (int s = 0; s + 1 < cfg_.n; ++s) tail += mul_[s][kept[s + 1]];
    key.tail = tail;
    return key;
  }

  std::vector<uint16_t> decode(const SkipGramKey& key) const;

  const SkipGramConfig& config() const { return cfg_; }
  int alphabet_size() const { return alphabet_size_; }
  // Number of head buckets (= alphabet_size^2).
  uint32_t buckets() const { return base_; }
  // Exclusive upper bound of tail values (= base^(n-1)).
  uint64_t tail_space() const { return tail_space_; }

 private:
  SkipGramConfig cfg_;
  int alphabet_size_;
  uint32_t base_;
  uint64_t tail_space_;
  std::vector<std::vector<uint64_t>> mul_;  // mul_[slot][code]
};

// Per-token alternate combined codes (lexical substitutions); empty vector for
// tokens without alternates. May itself be empty when no list is in force.
using AlternateCodes = std::vector<std::vector<uint16_t>>;

// Appends the skip-grams whose windows fit inside pos's document: all n
// variants when m words remain, only the contiguous variant when exactly n
// remain, nothing otherwise. The first window word is never skipped.
void generate_skipgrams(uint32_t pos, const std::vector<uint16_t>& codes,
                        const Corpus& corpus, const KeyEncoder& enc,
                        std::vector<SkipGram>& out);

// As above, but when any window word carries alternate codes the window is
// re-encoded under several code assignments: the all-primary assignment, the
// assignment taking every first alternate, then further combinations in
// odometer order, max_sets assignments in total. Duplicate (variant, key)
// entries are dropped.
void generate_skipgrams(uint32_t pos, const std::vector<uint16_t>& codes,
                        const AlternateCodes& alternates, int max_sets,
                        const Corpus& corpus, const KeyEncoder& enc,
                        std::vector<SkipGram>& out);

}  // namespace parallels
