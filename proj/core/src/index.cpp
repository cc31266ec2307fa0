#include "parallels/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "parallels/errors.hpp"

namespace parallels {

namespace {

constexpr uint64_t kMagic = 0x31584449'47535050ull;  // "PPSG" "IDX1"
constexpr uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, T value) {
  // Little-endian byte order regardless of host.
  unsigned char bytes[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<unsigned char>((static_cast<uint64_t>(value) >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  uint64_t value = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  return static_cast<T>(value);
}

}  // namespace

SkipGramIndex SkipGramIndex::build(const Corpus& corpus,
                                   const std::vector<uint16_t>& codes,
                                   const KeyEncoder& enc,
                                   const AlternateCodes* alternates,
                                   int max_sets, uint32_t index_begin,
                                   uint32_t index_end) {
  SkipGramIndex index(corpus, codes, enc, alternates, max_sets);
  index.index_begin_ = std::min<uint32_t>(index_begin, corpus.size());
  index.index_end_ = std::min<uint32_t>(index_end, corpus.size());

  const uint32_t buckets = enc.buckets();
  index.offsets_.assign(buckets + 1, 0);

  // Two passes over the generated skip-grams: count per-bucket sizes, then
  // scatter entries straight into their bucket slots. Avoids a temporary
  // entry array at full-corpus scale.
  std::vector<SkipGram> grams;
  grams.reserve(64);
  for (uint32_t pos = index.index_begin_; pos < index.index_end_; ++pos) {
    grams.clear();
    index.probe_keys(pos, grams);
    for (const SkipGram& g : grams) index.offsets_[g.key.head + 1]++;
  }
  for (uint32_t b = 0; b < buckets; ++b)
    index.offsets_[b + 1] += index.offsets_[b];

  index.entries_.resize(index.offsets_[buckets]);
  std::vector<uint64_t> cursor(index.offsets_.begin(), index.offsets_.end() - 1);
  for (uint32_t pos = index.index_begin_; pos < index.index_end_; ++pos) {
    grams.clear();
    index.probe_keys(pos, grams);
    const uint16_t doc = static_cast<uint16_t>(corpus.doc_of(pos));
    for (const SkipGram& g : grams) {
      Entry& e = index.entries_[cursor[g.key.head]++];
      e.tail = g.key.tail;
      e.pos = pos;
      e.doc = doc;
      e.variant = g.variant;
    }
  }

  for (uint32_t b = 0; b < buckets; ++b) {
    std::sort(index.entries_.begin() + index.offsets_[b],
              index.entries_.begin() + index.offsets_[b + 1],
              [](const Entry& a, const Entry& c) {
                if (a.tail != c.tail) return a.tail < c.tail;
                if (a.pos != c.pos) return a.pos < c.pos;
                return a.variant < c.variant;
              });
  }
  return index;
}

void SkipGramIndex::probe_keys(uint32_t pos, std::vector<SkipGram>& out) const {
  if (alternates_ && !alternates_->empty()) {
    generate_skipgrams(pos, *codes_, *alternates_, max_sets_, *corpus_, *enc_,
                       out);
  } else {
    generate_skipgrams(pos, *codes_, *corpus_, *enc_, out);
  }
}

void SkipGramIndex::query(uint32_t pos, uint32_t vicinity,
                          std::vector<MatchPoint>& out) const {
  std::vector<SkipGram> grams;
  probe_keys(pos, grams);
  if (grams.empty()) return;

  const size_t first = out.size();
  const SkipGramConfig& cfg = enc_->config();
  const uint16_t base_doc = static_cast<uint16_t>(corpus_->doc_of(pos));

  for (const SkipGram& g : grams) {
    const Entry* lo = bucket_begin(g.key.head);
    const Entry* hi = bucket_end(g.key.head);
    const Entry* it = std::lower_bound(
        lo, hi, g.key.tail,
        [](const Entry& e, uint64_t tail) { return e.tail < tail; });
    const uint8_t base_width =
        static_cast<uint8_t>(variant_width(g.variant, cfg));
    for (; it != hi && it->tail == g.key.tail; ++it) {
      if (it->pos == pos) continue;  // self
      const uint32_t dist = it->pos > pos ? it->pos - pos : pos - it->pos;
      if (dist < vicinity) continue;
      MatchPoint mp;
      mp.base_pos = pos;
      mp.match_pos = it->pos;
      mp.base_doc = base_doc;
      mp.match_doc = it->doc;
      mp.multiplicity = 1;
      mp.base_width = base_width;
      mp.match_width = static_cast<uint8_t>(variant_width(it->variant, cfg));
      out.push_back(mp);
    }
  }

  // Fold hits on the same occurrence position into one MatchPoint.
  std::sort(out.begin() + first, out.end(),
            [](const MatchPoint& a, const MatchPoint& b) {
              return a.match_pos < b.match_pos;
            });
  auto write = out.begin() + first;
  for (auto it = out.begin() + first; it != out.end();) {
    MatchPoint folded = *it;
    for (++it; it != out.end() && it->match_pos == folded.match_pos; ++it) {
      if (folded.multiplicity < UINT16_MAX) folded.multiplicity++;
      folded.base_width = std::max(folded.base_width, it->base_width);
      folded.match_width = std::max(folded.match_width, it->match_width);
    }
    *write++ = folded;
  }
  out.erase(write, out.end());
}

void SkipGramIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());

  write_raw<uint64_t>(out, kMagic);
  write_raw<uint32_t>(out, kVersion);
  write_raw<uint32_t>(out, static_cast<uint32_t>(enc_->alphabet_size()));
  write_raw<uint32_t>(out, static_cast<uint32_t>(enc_->config().n));
  write_raw<uint32_t>(out, static_cast<uint32_t>(enc_->config().m));
  write_raw<uint64_t>(out, corpus_->size());
  write_raw<uint32_t>(out, index_begin_);
  write_raw<uint32_t>(out, index_end_);
  write_raw<uint64_t>(out, entries_.size());

  const uint32_t buckets = enc_->buckets();
  for (uint32_t b = 0; b < buckets; ++b) {
    const Entry* lo = bucket_begin(b);
    const Entry* hi = bucket_end(b);
    // Count distinct tails, then write each run.
    uint32_t runs = 0;
    for (const Entry* it = lo; it != hi;) {
      const uint64_t tail = it->tail;
      while (it != hi && it->tail == tail) ++it;
      ++runs;
    }
    write_raw<uint32_t>(out, runs);
    for (const Entry* it = lo; it != hi;) {
      const uint64_t tail = it->tail;
      const Entry* run_start = it;
      while (it != hi && it->tail == tail) ++it;
      write_raw<uint64_t>(out, tail);
      write_raw<uint32_t>(out, static_cast<uint32_t>(it - run_start));
      for (const Entry* e = run_start; e != it; ++e) {
        write_raw<uint32_t>(out, e->pos);
        write_raw<uint16_t>(out, e->doc);
        write_raw<uint8_t>(out, e->variant);
      }
    }
  }
  if (!out) throw IoError("write failure on " + path.string());
}

SkipGramIndex SkipGramIndex::load(const std::filesystem::path& path,
                                  const Corpus& corpus,
                                  const std::vector<uint16_t>& codes,
                                  const KeyEncoder& enc,
                                  const AlternateCodes* alternates,
                                  int max_sets) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());

  if (read_raw<uint64_t>(in) != kMagic)
    throw ConfigError(path.string() + ": not a skip-gram index file");
  if (read_raw<uint32_t>(in) != kVersion)
    throw ConfigError(path.string() + ": unsupported index version");
  const auto alphabet_size = read_raw<uint32_t>(in);
  const auto n = read_raw<uint32_t>(in);
  const auto m = read_raw<uint32_t>(in);
  const auto token_count = read_raw<uint64_t>(in);
  if (alphabet_size != static_cast<uint32_t>(enc.alphabet_size()) ||
      n != static_cast<uint32_t>(enc.config().n) ||
      m != static_cast<uint32_t>(enc.config().m) ||
      token_count != corpus.size())
    throw ConfigError(path.string() + ": index does not match this corpus");

  SkipGramIndex index(corpus, codes, enc, alternates, max_sets);
  index.index_begin_ = read_raw<uint32_t>(in);
  index.index_end_ = read_raw<uint32_t>(in);
  const uint64_t entry_count = read_raw<uint64_t>(in);

  const uint32_t buckets = enc.buckets();
  index.offsets_.assign(buckets + 1, 0);
  index.entries_.reserve(entry_count);
  for (uint32_t b = 0; b < buckets; ++b) {
    index.offsets_[b] = index.entries_.size();
    const uint32_t runs = read_raw<uint32_t>(in);
    for (uint32_t r = 0; r < runs; ++r) {
      const uint64_t tail = read_raw<uint64_t>(in);
      const uint32_t count = read_raw<uint32_t>(in);
      for (uint32_t i = 0; i < count; ++i) {
        Entry e;
        e.tail = tail;
        e.pos = read_raw<uint32_t>(in);
        e.doc = read_raw<uint16_t>(in);
        e.variant = read_raw<uint8_t>(in);
        index.entries_.push_back(e);
      }
    }
  }
  index.offsets_[buckets] = index.entries_.size();
  if (!in || index.entries_.size() != entry_count)
    throw IoError(path.string() + ": truncated index file");
  return index;
}

}  // namespace parallels
