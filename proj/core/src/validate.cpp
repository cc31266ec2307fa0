#include "parallels/validate.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <unordered_map>

#include "parallels/errors.hpp"
#include "parallels/utf8.hpp"

namespace parallels {

namespace {

int distance_cap(int value, int limit) {
  return value <= limit ? value : limit + 1;
}

// Bit-parallel edit distance, pattern rows packed 64 per block, cut off at
// limit. peq holds one mask row per symbol (stride = block count); text is
// the symbol-id sequence of the other string. Scratch avoids reallocating
// the per-block state across calls.
struct BlockState {
  uint64_t pv;
  uint64_t mv;
};

// Single-block specialization (m <= 64): the whole pattern state lives in two
// registers.
int myers_one_block(const uint64_t* peq, int m, const uint16_t* text, int n,
                    int limit) {
  uint64_t pv = ~0ull, mv = 0;
  int score = m;
  const uint64_t last_row_bit = 1ull << ((m - 1) & 63);
  for (int j = 0; j < n; ++j) {
    const uint64_t eq = peq[text[j]];
    const uint64_t xv = eq | mv;
    const uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
    uint64_t ph = mv | ~(xh | pv);
    uint64_t mh = pv & xh;
    if (ph & last_row_bit) ++score;
    if (mh & last_row_bit) --score;
    ph = (ph << 1) | 1;
    mh <<= 1;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
    if (score - (n - j - 1) > limit) return limit + 1;
  }
  return distance_cap(score, limit);
}

// Two-block specialization (m <= 128), which covers typical passage lengths:
// both blocks' state stays in registers and the carry between them is scalar.
int myers_two_block(const uint64_t* peq, int m, const uint16_t* text, int n,
                    int limit) {
  uint64_t pv0 = ~0ull, mv0 = 0, pv1 = ~0ull, mv1 = 0;
  int score = m;
  const uint64_t last_row_bit = 1ull << ((m - 1) & 63);
  for (int j = 0; j < n; ++j) {
    const uint64_t* eq_row = peq + size_t(text[j]) * 2;

    uint64_t eq = eq_row[0];
    const uint64_t xv0 = eq | mv0;
    uint64_t xh = (((eq & pv0) + pv0) ^ pv0) | eq;
    uint64_t ph = mv0 | ~(xh | pv0);
    uint64_t mh = pv0 & xh;
    const int hout = static_cast<int>(ph >> 63) - static_cast<int>(mh >> 63);
    ph = (ph << 1) | 1;
    mh <<= 1;
    pv0 = mh | ~(xv0 | ph);
    mv0 = ph & xv0;

    eq = eq_row[1] | (hout < 0 ? 1ull : 0ull);
    const uint64_t xv1 = eq_row[1] | mv1;
    xh = (((eq & pv1) + pv1) ^ pv1) | eq;
    ph = mv1 | ~(xh | pv1);
    mh = pv1 & xh;
    if (ph & last_row_bit) ++score;
    if (mh & last_row_bit) --score;
    ph = (ph << 1) | (hout > 0 ? 1ull : 0ull);
    mh = (mh << 1) | (hout < 0 ? 1ull : 0ull);
    pv1 = mh | ~(xv1 | ph);
    mv1 = ph & xv1;

    if (score - (n - j - 1) > limit) return limit + 1;
  }
  return distance_cap(score, limit);
}

int myers_bounded(const uint64_t* peq, int blocks, int m,
                  const uint16_t* text, int n, int limit,
                  std::vector<BlockState>& state) {
  if (m == 0) return distance_cap(n, limit);
  if (n == 0) return distance_cap(m, limit);
  if (m > n ? m - n > limit : n - m > limit) return limit + 1;
  if (blocks == 1) return myers_one_block(peq, m, text, n, limit);
  if (blocks == 2) return myers_two_block(peq, m, text, n, limit);

  state.assign(blocks, BlockState{~0ull, 0ull});
  int score = m;
  const uint64_t last_row_bit = 1ull << ((m - 1) & 63);

  for (int j = 0; j < n; ++j) {
    const uint64_t* eq_row = peq + size_t(text[j]) * blocks;
    int hin = 1;  // the empty-prefix row grows by one per text character
    for (int b = 0; b < blocks; ++b) {
      const uint64_t eq = eq_row[b];
      uint64_t pv = state[b].pv;
      uint64_t mv = state[b].mv;

      const uint64_t xv = eq | mv;
      const uint64_t eq_in = eq | (hin < 0 ? 1ull : 0ull);
      const uint64_t xh = (((eq_in & pv) + pv) ^ pv) | eq_in;
      uint64_t ph = mv | ~(xh | pv);
      uint64_t mh = pv & xh;

      int hout = 0;
      if (b == blocks - 1) {
        if (ph & last_row_bit) score++;
        if (mh & last_row_bit) score--;
      } else {
        if (ph >> 63) hout = 1;
        if (mh >> 63) hout = -1;
      }

      ph = (ph << 1) | (hin > 0 ? 1ull : 0ull);
      mh = (mh << 1) | (hin < 0 ? 1ull : 0ull);
      state[b].pv = mh | ~(xv | ph);
      state[b].mv = ph & xv;
      hin = hout;
    }
    if (score - (n - j - 1) > limit) return limit + 1;
  }
  return distance_cap(score, limit);
}

}  // namespace

int levenshtein(const std::u32string& a, const std::u32string& b) {
  const size_t m = a.size(), n = b.size();
  if (m == 0) return static_cast<int>(n);
  if (n == 0) return static_cast<int>(m);

  std::vector<int> row(n + 1);
  for (size_t j = 0; j <= n; ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= m; ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= n; ++j) {
      const int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({sub, row[j] + 1, row[j - 1] + 1});
    }
  }
  return row[n];
}

int levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode_all(a), utf8::decode_all(b));
}

int levenshtein_bounded(const std::u32string& a, const std::u32string& b,
                        int limit) {
  if (limit < 0) limit = 0;
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  if (m == 0 || n == 0) return distance_cap(std::max(m, n), limit);
  if (a.size() + b.size() > 60000)  // symbol ids are 16-bit
    return distance_cap(levenshtein(a, b), limit);

  std::unordered_map<char32_t, uint16_t> symbol;
  symbol.reserve(m + n);
  auto id_of = [&](char32_t c) {
    return symbol.emplace(c, static_cast<uint16_t>(symbol.size())).first->second;
  };

  const int blocks = (m + 63) / 64;
  std::vector<uint16_t> pattern(m), text(n);
  for (int i = 0; i < m; ++i) pattern[i] = id_of(a[i]);
  for (int j = 0; j < n; ++j) text[j] = id_of(b[j]);

  std::vector<uint64_t> peq(symbol.size() * blocks, 0);
  for (int i = 0; i < m; ++i)
    peq[size_t(pattern[i]) * blocks + (i >> 6)] |= 1ull << (i & 63);

  std::vector<BlockState> state;
  return myers_bounded(peq.data(), blocks, m, text.data(), n, limit, state);
}

namespace {

int ratio_limit(double ratio, size_t base_len) {
  return static_cast<int>(ratio * static_cast<double>(base_len) + 1e-9);
}

}  // namespace

bool is_valid_pair(const PassagePair& pair, const Corpus& corpus,
                   const ValidationParams& params) {
  const std::u32string base =
      utf8::decode_all(corpus.join_span(pair.base_start, pair.base_end));
  const std::u32string match =
      utf8::decode_all(corpus.join_span(pair.match_start, pair.match_end));
  const int limit = ratio_limit(params.threshold_ratio, base.size());
  return levenshtein_bounded(base, match, limit) <= limit;
}

namespace {

// Per-document symbol-id text of space-joined tokens, with each word's start
// offset (word_begin has doc_size + 1 entries; window [w, w+L) covers symbol
// range [word_begin[w], word_begin[w+L] - 1), the trailing space trimmed).
struct JoinedDoc {
  std::vector<uint16_t> symbols;
  std::vector<uint32_t> word_begin;
};

struct Window {
  const uint16_t* text;
  uint32_t length;    // in symbols
  uint32_t pos;       // global token position of the first word
  uint16_t doc;
};

JoinedDoc join_document(const Corpus& corpus, int32_t doc,
                        std::unordered_map<char32_t, uint16_t>& symbol) {
  JoinedDoc joined;
  const uint32_t start = corpus.doc_start(doc);
  const uint32_t count = corpus.doc_size(doc);
  joined.word_begin.reserve(count + 1);
  const uint16_t space =
      symbol.emplace(U' ', static_cast<uint16_t>(symbol.size())).first->second;

  for (uint32_t w = 0; w < count; ++w) {
    if (w > 0) joined.symbols.push_back(space);
    joined.word_begin.push_back(static_cast<uint32_t>(joined.symbols.size()));
    std::string_view surface = corpus.token(start + w).surface;
    size_t at = 0;
    while (at < surface.size()) {
      const int32_t cp = utf8::decode(surface, at);
      joined.symbols.push_back(
          symbol.emplace(static_cast<char32_t>(cp),
                         static_cast<uint16_t>(symbol.size()))
              .first->second);
    }
  }
  joined.word_begin.push_back(static_cast<uint32_t>(joined.symbols.size() + 1));
  return joined;
}

std::vector<Window> enumerate_windows(const Corpus& corpus,
                                      const std::vector<JoinedDoc>& joined,
                                      int min_len) {
  std::vector<Window> windows;
  for (size_t d = 0; d < joined.size(); ++d) {
    const uint32_t count = corpus.doc_size(static_cast<int32_t>(d));
    if (count < static_cast<uint32_t>(min_len)) continue;
    const JoinedDoc& doc = joined[d];
    for (uint32_t w = 0; w + min_len <= count; ++w) {
      Window window;
      window.text = doc.symbols.data() + doc.word_begin[w];
      window.length = doc.word_begin[w + min_len] - 1 - doc.word_begin[w];
      window.pos = corpus.doc_start(static_cast<int32_t>(d)) + w;
      window.doc = static_cast<uint16_t>(d);
      windows.push_back(window);
    }
  }
  return windows;
}

}  // namespace

namespace {

// Bigram-profile lower bound on edit distance. Each window gets three
// bit-planes over the bigram space (count >= 1, >= 2, >= 3); the XOR popcount
// of two windows' planes never exceeds the L1 distance of their bigram count
// profiles, and one edit changes at most four bigram occurrences, so
// popcount / 4 <= levenshtein. Rejecting on that bound keeps the oracle exact
// while skipping the full distance computation for almost every random pair.
struct BigramPlanes {
  int plane_words = 0;
  std::vector<uint64_t> presence;  // plane_words per window
  std::vector<uint64_t> repeats;   // 2 * plane_words per window

  void build(const std::vector<Window>& windows, int symbol_count) {
    const int gram_space = symbol_count * symbol_count;
    plane_words = (gram_space + 63) / 64;
    presence.assign(windows.size() * plane_words, 0);
    repeats.assign(windows.size() * 2 * plane_words, 0);

    std::vector<uint8_t> count(static_cast<size_t>(gram_space), 0);
    std::vector<int> touched;
    for (size_t i = 0; i < windows.size(); ++i) {
      uint64_t* once = presence.data() + i * plane_words;
      uint64_t* more = repeats.data() + i * 2 * plane_words;
      const Window& w = windows[i];
      touched.clear();
      for (uint32_t t = 0; t + 1 < w.length; ++t) {
        const int g = w.text[t] * symbol_count + w.text[t + 1];
        const uint8_t c = ++count[g];
        if (c == 1) {
          once[g >> 6] |= 1ull << (g & 63);
          touched.push_back(g);
        } else if (c == 2) {
          more[g >> 6] |= 1ull << (g & 63);
        } else if (c == 3) {
          more[plane_words + (g >> 6)] |= 1ull << (g & 63);
        }
      }
      for (int g : touched) count[g] = 0;
    }
  }
};

}  // namespace

std::vector<PassagePair> brute_force_find(const Corpus& corpus_a,
                                          const Corpus& corpus_b, int min_len,
                                          const ValidationParams& params,
                                          int max_gap,
                                          uint64_t max_window_pairs) {
  if (min_len < 1) throw ConfigError("window length must be positive");
  const bool self = &corpus_a == &corpus_b;

  std::unordered_map<char32_t, uint16_t> symbol;
  std::vector<JoinedDoc> joined_a, joined_b;
  for (size_t d = 0; d < corpus_a.documents().size(); ++d)
    joined_a.push_back(join_document(corpus_a, static_cast<int32_t>(d), symbol));
  if (!self)
    for (size_t d = 0; d < corpus_b.documents().size(); ++d)
      joined_b.push_back(
          join_document(corpus_b, static_cast<int32_t>(d), symbol));
  if (symbol.size() > 60000)
    throw ConfigError("brute_force_find: corpus uses too many distinct characters");

  const std::vector<Window> windows_a =
      enumerate_windows(corpus_a, joined_a, min_len);
  const std::vector<Window> windows_b =
      self ? windows_a : enumerate_windows(corpus_b, joined_b, min_len);

  uint64_t pair_count = 0;
  if (self) {
    // Windows are ordered by global position; count partners at or past
    // base_start + min_len for each base window.
    for (size_t i = 0; i < windows_a.size(); ++i) {
      const uint32_t cutoff = windows_a[i].pos + min_len;
      const auto from = std::lower_bound(
          windows_a.begin(), windows_a.end(), cutoff,
          [](const Window& w, uint32_t value) { return w.pos < value; });
      pair_count += static_cast<uint64_t>(windows_a.end() - from);
    }
  } else {
    pair_count = static_cast<uint64_t>(windows_a.size()) * windows_b.size();
  }
  if (pair_count > max_window_pairs)
    throw ConfigError("brute_force_find: " + std::to_string(pair_count) +
                      " window pairs exceed the cap of " +
                      std::to_string(max_window_pairs));

  // The bit-plane filter's footprint grows with the square of the alphabet,
  // so it only runs for compact alphabets (Hebrew text stays around 30
  // distinct characters); otherwise every pair goes straight to the distance.
  const int symbol_count = static_cast<int>(symbol.size());
  const bool filtered = symbol_count >= 2 && symbol_count <= 40;
  BigramPlanes planes_a, planes_b_storage;
  if (filtered) {
    planes_a.build(windows_a, symbol_count);
    if (!self) planes_b_storage.build(windows_b, symbol_count);
  }
  const BigramPlanes& planes_b = self ? planes_a : planes_b_storage;
  const int plane_words = planes_a.plane_words;

  std::vector<uint64_t> peq;
  std::vector<BlockState> state;
  std::vector<PassagePair> hits;

  for (size_t ia = 0; ia < windows_a.size(); ++ia) {
    const Window& wa = windows_a[ia];
    const int m = static_cast<int>(wa.length);
    const int blocks = (m + 63) / 64;
    const int limit = ratio_limit(params.threshold_ratio, wa.length);
    const int gram_limit = 4 * limit;
    const uint64_t* once_a = planes_a.presence.data() + ia * plane_words;
    const uint64_t* more_a = planes_a.repeats.data() + ia * 2 * plane_words;

    peq.assign(symbol.size() * blocks, 0);
    for (int i = 0; i < m; ++i)
      peq[size_t(wa.text[i]) * blocks + (i >> 6)] |= 1ull << (i & 63);

    const Window* first_b = windows_b.data();
    const Window* last_b = windows_b.data() + windows_b.size();
    if (self) {
      first_b = std::lower_bound(
          first_b, last_b, wa.pos + min_len,
          [](const Window& w, uint32_t value) { return w.pos < value; });
    }

    for (const Window* wb = first_b; wb != last_b; ++wb) {
      const int n = static_cast<int>(wb->length);
      if (m > n ? m - n > limit : n - m > limit) continue;

      if (filtered) {
        const size_t ib = static_cast<size_t>(wb - windows_b.data());
        const uint64_t* once_b = planes_b.presence.data() + ib * plane_words;
        int bound = 0;
        for (int w = 0; w < plane_words; ++w)
          bound += std::popcount(once_a[w] ^ once_b[w]);
        if (bound > gram_limit) continue;
        const uint64_t* more_b = planes_b.repeats.data() + ib * 2 * plane_words;
        for (int w = 0; w < 2 * plane_words; ++w)
          bound += std::popcount(more_a[w] ^ more_b[w]);
        if (bound > gram_limit) continue;
      }

      const int dist = myers_bounded(peq.data(), blocks, m, wb->text,
                                     static_cast<int>(wb->length), limit, state);
      if (dist > limit) continue;
      PassagePair pair;
      pair.base_start = wa.pos;
      pair.base_end = wa.pos + min_len - 1;
      pair.match_start = wb->pos;
      pair.match_end = wb->pos + min_len - 1;
      pair.base_doc = wa.doc;
      pair.match_doc = wb->doc;
      pair.support = 1;
      hits.push_back(pair);
    }
  }

  return merge_overlapping(std::move(hits), max_gap);
}

}  // namespace parallels
