#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "parallels/corpus.hpp"
#include "parallels/skipgram.hpp"

namespace parallels {

// One (base position, match position) agreement discovered through the index.
// Several variant combinations can match the same position pair; they are
// folded into one point, multiplicity counting the folded hits and the width
// fields keeping the widest window either side covered (used for span ends
// and gap measurement when chaining).
struct MatchPoint {
  uint32_t base_pos = 0;
  uint32_t match_pos = 0;
  uint16_t base_doc = 0;
  uint16_t match_doc = 0;
  uint16_t multiplicity = 0;
  uint8_t base_width = 0;
  uint8_t match_width = 0;

  int64_t offset() const {
    return static_cast<int64_t>(base_pos) - static_cast<int64_t>(match_pos);
  }
};

// Inverted skip-gram index: alphabet_size^2 sub-indexes selected by a key's
// head code, each a run of entries sorted by (tail, pos, variant). Lookups
// binary-search the head bucket's run for the tail. The index keeps
// references to the corpus, codes, and alternates it was built over (to
// regenerate a query position's keys) and must not outlive them.
class SkipGramIndex {
 public:
  struct Entry {
    uint64_t tail = 0;
    uint32_t pos = 0;
    uint16_t doc = 0;
    uint8_t variant = 0;
  };

  // Indexes windows starting in [index_begin, index_end). The default covers
  // the whole corpus; cross-corpus search indexes only the first corpus's
  // token range. alternates (nullable) / max_sets mirror generate_skipgrams.
  static SkipGramIndex build(const Corpus& corpus,
                             const std::vector<uint16_t>& codes,
                             const KeyEncoder& enc,
                             const AlternateCodes* alternates = nullptr,
                             int max_sets = 8, uint32_t index_begin = 0,
                             uint32_t index_end = UINT32_MAX);

  // All stored occurrences sharing a key with the window at pos, excluding
  // pos itself and any occurrence nearer than vicinity words. One MatchPoint
  // per distinct occurrence position (base side = pos), appended to out in
  // ascending match_pos order.
  void query(uint32_t pos, uint32_t vicinity,
             std::vector<MatchPoint>& out) const;

  size_t entry_count() const { return entries_.size(); }
  uint32_t bucket_count() const { return enc_->buckets(); }
  uint32_t index_begin() const { return index_begin_; }
  uint32_t index_end() const { return index_end_; }
  const Corpus& corpus() const { return *corpus_; }

  const Entry* bucket_begin(uint32_t head) const {
    return entries_.data() + offsets_[head];
  }
  const Entry* bucket_end(uint32_t head) const {
    return entries_.data() + offsets_[head + 1];
  }

  // Version-tagged little-endian binary serialization: header (magic,
  // version, alphabet size, n, m, token count, indexed range), then each
  // bucket's (tail, occurrence list) runs in sorted order.
  void save(const std::filesystem::path& path) const;

  // Reloads an index previously saved over the same corpus/codes; throws
  // ConfigError when the header does not match them.
  static SkipGramIndex load(const std::filesystem::path& path,
                            const Corpus& corpus,
                            const std::vector<uint16_t>& codes,
                            const KeyEncoder& enc,
                            const AlternateCodes* alternates = nullptr,
                            int max_sets = 8);

 private:
  SkipGramIndex(const Corpus& corpus, const std::vector<uint16_t>& codes,
                const KeyEncoder& enc, const AlternateCodes* alternates,
                int max_sets)
      : corpus_(&corpus), codes_(&codes), enc_(&enc), alternates_(alternates),
        max_sets_(max_sets) {}

  void probe_keys(uint32_t pos, std::vector<SkipGram>& out) const;

  const Corpus* corpus_;
  const std::vector<uint16_t>* codes_;
  const KeyEncoder* enc_;
  const AlternateCodes* alternates_;
  int max_sets_;
  uint32_t index_begin_ = 0;
  uint32_t index_end_ = 0;
  std::vector<Entry> entries_;
  std::vector<uint64_t> offsets_;  // bucket_count + 1
};

}  // namespace parallels
