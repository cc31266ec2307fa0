#include "parallels/lexsub.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <unordered_map>

#include "parallels/errors.hpp"

namespace parallels {

namespace {

void canonicalize(SubstitutionEntry& e) {
  if (e.word_b < e.word_a) std::swap(e.word_a, e.word_b);
}

bool entry_order(const SubstitutionEntry& a, const SubstitutionEntry& b) {
  if (a.word_a != b.word_a) return a.word_a < b.word_a;
  return a.word_b < b.word_b;
}

}  // namespace

SubstitutionList::SubstitutionList(std::vector<SubstitutionEntry> entries) {
  for (auto& e : entries) canonicalize(e);
  std::erase_if(entries,
                [](const SubstitutionEntry& e) { return e.word_a == e.word_b; });
  std::sort(entries.begin(), entries.end(), entry_order);

  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().word_a == e.word_a &&
        entries_.back().word_b == e.word_b) {
      entries_.back().count = std::max(entries_.back().count, e.count);
    } else {
      entries_.push_back(std::move(e));
    }
  }
}

std::vector<std::pair<std::string_view, uint32_t>> SubstitutionList::partners(
    std::string_view word) const {
  std::vector<std::pair<std::string_view, uint32_t>> found;
  for (const auto& e : entries_) {
    if (e.word_a == word) found.emplace_back(e.word_b, e.count);
    else if (e.word_b == word) found.emplace_back(e.word_a, e.count);
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return found;
}

void SubstitutionList::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& e : entries_)
    out << e.word_a << '\t' << e.word_b << '\t' << e.count << '\n';
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

SubstitutionList SubstitutionList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());

  std::vector<SubstitutionEntry> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    const auto bad = [&](const char* why) {
      return ConfigError(path.string() + ":" + std::to_string(line_no) + ": " +
                         why);
    };
    if (t2 == std::string::npos) throw bad("expected 3 tab-separated fields");

    SubstitutionEntry e;
    e.word_a = line.substr(0, t1);
    e.word_b = line.substr(t1 + 1, t2 - t1 - 1);
    if (e.word_a.empty() || e.word_b.empty()) throw bad("empty word");
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    auto [end, ec] = std::from_chars(first, last, e.count);
    if (ec != std::errc() || end != last || e.count == 0)
      throw bad("bad count");
    entries.push_back(std::move(e));
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  return SubstitutionList(std::move(entries));
}

SubstitutionList merge_lists(const SubstitutionList& a,
                             const SubstitutionList& b) {
  std::vector<SubstitutionEntry> all = a.entries();
  all.insert(all.end(), b.entries().begin(), b.entries().end());
  return SubstitutionList(std::move(all));
}

std::vector<std::pair<std::string, std::string>> extract_discrepancies(
    const PassagePair& pair, const Corpus& corpus,
    const std::vector<uint16_t>& codes, const LetterTable& table) {
  std::vector<std::pair<std::string, std::string>> out;
  const uint32_t la = pair.base_len();
  const uint32_t lb = pair.match_len();
  if (la == 0 || lb == 0 || la > 2048 || lb > 2048) return out;

  const uint16_t* a = codes.data() + pair.base_start;
  const uint16_t* b = codes.data() + pair.match_start;

  // Word-level edit DP. dir remembers the chosen move for the backtrack:
  // 0 diagonal (match or substitution), 1 up (base word unmatched), 2 left.
  const size_t stride = lb + 1;
  std::vector<uint16_t> prev(stride), curr(stride);
  std::vector<uint8_t> dir((la + 1) * stride);
  for (uint32_t j = 0; j <= lb; ++j) {
    prev[j] = static_cast<uint16_t>(j);
    dir[j] = 2;
  }
  for (uint32_t i = 1; i <= la; ++i) {
    curr[0] = static_cast<uint16_t>(i);
    dir[i * stride] = 1;
    for (uint32_t j = 1; j <= lb; ++j) {
      const uint16_t diag = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const uint16_t up = prev[j] + 1;
      const uint16_t left = curr[j - 1] + 1;
      uint16_t best = diag;
      uint8_t d = 0;
      if (up < best) { best = up; d = 1; }
      if (left < best) { best = left; d = 2; }
      curr[j] = best;
      dir[i * stride + j] = d;
    }
    std::swap(prev, curr);
  }

  // Backtrack into an op list, then walk it in passage order.
  enum : uint8_t { kMatch, kSub, kGap };
  std::vector<uint8_t> ops;
  std::vector<uint32_t> base_word;  // base index per op (kGap from b: npos)
  std::vector<uint32_t> match_word;
  uint32_t i = la, j = lb;
  while (i > 0 || j > 0) {
    const uint8_t d = dir[i * stride + j];
    if (d == 0) {
      ops.push_back(a[i - 1] == b[j - 1] ? kMatch : kSub);
      base_word.push_back(i - 1);
      match_word.push_back(j - 1);
      --i, --j;
    } else if (d == 1) {
      ops.push_back(kGap);
      base_word.push_back(i - 1);
      match_word.push_back(UINT32_MAX);
      --i;
    } else {
      ops.push_back(kGap);
      base_word.push_back(UINT32_MAX);
      match_word.push_back(j - 1);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  std::reverse(base_word.begin(), base_word.end());
  std::reverse(match_word.begin(), match_word.end());

  for (size_t c = 0; c < ops.size(); ++c) {
    if (ops[c] != kSub) continue;
    if (c > 0 && ops[c - 1] != kMatch) continue;
    if (c + 1 < ops.size() && ops[c + 1] != kMatch) continue;

    const std::string_view sa =
        corpus.token(pair.base_start + base_word[c]).surface;
    const std::string_view sb =
        corpus.token(pair.match_start + match_word[c]).surface;
    std::string na = normalize_letters(sa, table);
    std::string nb = normalize_letters(sb, table);
    if (na == nb) continue;
    out.emplace_back(std::move(na), std::move(nb));
  }
  return out;
}

SubstitutionList build_substitution_list(
    const std::vector<std::pair<std::string, std::string>>& discrepancies,
    int freq_threshold) {
  std::map<std::pair<std::string, std::string>, uint32_t> tally;
  for (const auto& [a, b] : discrepancies) {
    if (a == b) continue;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    tally[std::move(key)]++;
  }

  std::vector<SubstitutionEntry> entries;
  for (auto& [words, count] : tally) {
    if (count < static_cast<uint32_t>(freq_threshold)) continue;
    entries.push_back({words.first, words.second, count});
  }
  return SubstitutionList(std::move(entries));
}

std::vector<WordCode> alternate_reduction(std::string_view word,
                                          const SubstitutionList& list,
                                          const LetterTable& table,
                                          int max_alternates) {
  std::vector<WordCode> out;
  for (const auto& [partner, count] : list.partners(word)) {
    if (static_cast<int>(out.size()) >= max_alternates) break;
    out.push_back(reduce_word(partner, table));
  }
  return out;
}

AlternateCodes compute_alternates(const Corpus& corpus,
                                  const SubstitutionList& list,
                                  const LetterTable& table,
                                  int max_alternates) {
  AlternateCodes alternates;
  if (list.empty()) return alternates;

  // Per distinct normalized word: the partner codes that differ from the
  // word's own code, deduplicated, in partner rank order.
  std::unordered_map<std::string, std::vector<uint16_t>> cache;
  for (const auto& e : list.entries()) {
    for (const auto& word : {e.word_a, e.word_b}) {
      if (cache.count(word)) continue;
      const uint16_t own = reduce_word(word, table).combined;
      std::vector<uint16_t> codes;
      for (const WordCode& alt :
           alternate_reduction(word, list, table, max_alternates)) {
        if (alt.combined == own) continue;
        if (std::find(codes.begin(), codes.end(), alt.combined) != codes.end())
          continue;
        codes.push_back(alt.combined);
      }
      cache.emplace(word, std::move(codes));
    }
  }

  alternates.assign(corpus.size(), {});
  for (uint32_t pos = 0; pos < corpus.size(); ++pos) {
    const std::string word =
        normalize_letters(corpus.token(pos).surface, table);
    auto it = cache.find(word);
    if (it != cache.end()) alternates[pos] = it->second;
  }
  return alternates;
}

uint64_t total_passage_words(const std::vector<PassagePair>& pairs) {
  uint64_t total = 0;
  for (const auto& p : pairs)
    total += std::max(p.base_len(), p.match_len());
  return total;
}

IterationOutcome run_iterations(const Corpus& corpus,
                                const std::vector<uint16_t>& codes,
                                const LetterTable& table, const SearchFn& search,
                                const RunOptions& opts) {
  IterationOutcome out;
  SubstitutionList current = opts.seed;
  uint64_t prev_words = 0;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    AlternateCodes alternates;
    const AlternateCodes* alternates_ptr = nullptr;
    if (!current.empty()) {
      alternates = compute_alternates(corpus, current, table,
                                      opts.max_alternates);
      alternates_ptr = &alternates;
    }

    out.pairs = search(alternates_ptr);
    const uint64_t words = total_passage_words(out.pairs);
    out.stats.push_back({iter, current.size(), words, out.pairs.size()});

    std::vector<std::pair<std::string, std::string>> discrepancies;
    for (const auto& pair : out.pairs) {
      auto found = extract_discrepancies(pair, corpus, codes, table);
      discrepancies.insert(discrepancies.end(),
                           std::make_move_iterator(found.begin()),
                           std::make_move_iterator(found.end()));
    }
    current = merge_lists(
        opts.seed, build_substitution_list(discrepancies, opts.freq_threshold));

    if (iter >= 2 && words <= prev_words + opts.gain_epsilon) break;
    prev_words = words;
  }

  out.list = std::move(current);
  return out;
}

}  // namespace parallels
