#include "parallels/skipgram.hpp"

#include <algorithm>
#include <stdexcept>

namespace parallels {

KeyEncoder::KeyEncoder(int alphabet_size, SkipGramConfig cfg)
    : cfg_(cfg), alphabet_size_(alphabet_size) {
  if (cfg.n < 2) throw std::invalid_argument("skip-gram n must be at least 2");
  if (cfg.n > 12) throw std::invalid_argument("skip-gram n must be at most 12");
  if (cfg.m != cfg.n + 1)
    throw std::invalid_argument("skip-gram window must be n + 1 words");
  if (alphabet_size < 2 || alphabet_size > 255)
    throw std::invalid_argument("unsupported alphabet size");

  base_ = static_cast<uint32_t>(alphabet_size) * alphabet_size;

  // tail_space_ = base^(n-1); reject configurations that cannot fit 64 bits.
  tail_space_ = 1;
  for (int i = 0; i + 1 < cfg.n; ++i) {
    if (tail_space_ > UINT64_MAX / base_)
      throw std::invalid_argument("skip-gram key does not fit in 64 bits");
    tail_space_ *= base_;
  }

  mul_.resize(cfg.n - 1);
  uint64_t multiplier = tail_space_ / base_;
  for (int slot = 0; slot + 1 < cfg.n; ++slot) {
    mul_[slot].resize(base_);
    for (uint32_t c = 0; c < base_; ++c) mul_[slot][c] = c * multiplier;
    multiplier /= base_;
  }
}

std::vector<uint16_t> KeyEncoder::decode(const SkipGramKey& key) const {
  std::vector<uint16_t> kept(cfg_.n);
  kept[0] = key.head;
  uint64_t tail = key.tail;
  for (int slot = cfg_.n - 2; slot >= 0; --slot) {
    kept[slot + 1] = static_cast<uint16_t>(tail % base_);
    tail /= base_;
  }
  return kept;
}

namespace {

// Encodes every variant of one window assignment. width is m, or n when only
// the contiguous variant fits the document.
void emit_variants(const uint16_t* window, int width, const KeyEncoder& enc,
                   std::vector<SkipGram>& out) {
  const SkipGramConfig& cfg = enc.config();
  uint16_t kept[16];
  if (width >= cfg.m) {
    for (int v = 0; v + 1 < cfg.n; ++v) {
      kept[0] = window[0];
      int w = 1;
      for (int i = 1; i < cfg.m; ++i)
        if (i != v + 1) kept[w++] = window[i];
      out.push_back({enc.encode(kept), static_cast<uint8_t>(v)});
    }
  }
  if (width >= cfg.n)
    out.push_back({enc.encode(window), static_cast<uint8_t>(cfg.n - 1)});
}

}  // namespace

void generate_skipgrams(uint32_t pos, const std::vector<uint16_t>& codes,
                        const Corpus& corpus, const KeyEncoder& enc,
                        std::vector<SkipGram>& out) {
  const SkipGramConfig& cfg = enc.config();
  const int32_t doc = corpus.doc_of(pos);
  const uint32_t doc_end = corpus.doc_start(doc) + corpus.doc_size(doc);
  const int remaining = static_cast<int>(doc_end - pos);
  if (remaining < cfg.n) return;
  emit_variants(codes.data() + pos, std::min(remaining, cfg.m), enc, out);
}

void generate_skipgrams(uint32_t pos, const std::vector<uint16_t>& codes,
                        const AlternateCodes& alternates, int max_sets,
                        const Corpus& corpus, const KeyEncoder& enc,
                        std::vector<SkipGram>& out) {
  const SkipGramConfig& cfg = enc.config();
  const int32_t doc = corpus.doc_of(pos);
  const uint32_t doc_end = corpus.doc_start(doc) + corpus.doc_size(doc);
  const int remaining = static_cast<int>(doc_end - pos);
  if (remaining < cfg.n) return;
  const int width = std::min(remaining, cfg.m);

  bool any_alternates = false;
  if (!alternates.empty()) {
    for (int i = 0; i < width; ++i)
      if (!alternates[pos + i].empty()) {
        any_alternates = true;
        break;
      }
  }
  if (!any_alternates || max_sets <= 1) {
    emit_variants(codes.data() + pos, width, enc, out);
    return;
  }

  // options[i]: primary code first, then the slot's alternates.
  uint16_t window[16];
  std::vector<std::vector<uint16_t>> options(width);
  for (int i = 0; i < width; ++i) {
    options[i].push_back(codes[pos + i]);
    for (const uint16_t alt : alternates[pos + i])
      options[i].push_back(alt);
  }

  const size_t first = out.size();
  int sets = 0;

  auto emit_assignment = [&](const std::vector<int>& choice) {
    for (int i = 0; i < width; ++i) window[i] = options[i][choice[i]];
    emit_variants(window, width, enc, out);
    ++sets;
  };

  // All-primary first, then all-first-alternate, so the two assignments that
  // carry most of the matching power always survive the cap.
  std::vector<int> choice(width, 0);
  emit_assignment(choice);
  bool has_alt_choice = false;
  for (int i = 0; i < width; ++i)
    if (options[i].size() > 1) {
      choice[i] = 1;
      has_alt_choice = true;
    }
  if (has_alt_choice && sets < max_sets) emit_assignment(choice);

  // Remaining combinations in odometer order, skipping the two above.
  std::vector<int> odo(width, 0);
  while (sets < max_sets) {
    int i = width - 1;
    for (; i >= 0; --i) {
      if (odo[i] + 1 < static_cast<int>(options[i].size())) {
        ++odo[i];
        std::fill(odo.begin() + i + 1, odo.end(), 0);
        break;
      }
    }
    if (i < 0) break;  // odometer exhausted
    if (odo == choice) continue;
    emit_assignment(odo);
  }

  // Assignments sharing codes on a variant's kept slots produce equal keys;
  // keep one entry per (variant, key).
  std::sort(out.begin() + first, out.end(), [](const SkipGram& a, const SkipGram& b) {
    if (a.variant != b.variant) return a.variant < b.variant;
    return a.key < b.key;
  });
  out.erase(std::unique(out.begin() + first, out.end(),
                        [](const SkipGram& a, const SkipGram& b) {
                          return a.variant == b.variant && a.key == b.key;
                        }),
            out.end());
}

}  // namespace parallels
