#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "parallels/cluster.hpp"
#include "parallels/corpus.hpp"

namespace parallels {

// Edit-distance acceptance rule: a candidate pair is genuine when the
// character distance between its two surface texts stays within
// threshold_ratio of the base text's length.
struct ValidationParams {
  double threshold_ratio = 0.30;
};

// Unit-cost insert/delete/substitute edit distance over codepoints. The
// string_view overload decodes UTF-8 first and throws std::invalid_argument
// on malformed input.
int levenshtein(const std::u32string& a, const std::u32string& b);
int levenshtein(std::string_view a, std::string_view b);

// Same distance, cut off at limit: returns the exact distance when it is at
// most limit, otherwise limit + 1. Bit-parallel, so much faster than the
// full table when limit is small relative to the lengths.
int levenshtein_bounded(const std::u32string& a, const std::u32string& b,
                        int limit);

// True when levenshtein(base_text, match_text) <= threshold_ratio *
// codepoint-length(base_text), both texts taken from the corpus with words
// joined by single spaces.
bool is_valid_pair(const PassagePair& pair, const Corpus& corpus,
                   const ValidationParams& params);

// Exhaustive recall oracle: compares every min_len-word window of corpus_a
// (stepped one word at a time, never crossing a document boundary) against
// every window of corpus_b, keeps the pairs passing the distance rule with
// the a-side window as base, and merges them with merge_overlapping(max_gap).
// Base fields address corpus_a, match fields corpus_b; support counts the
// window pairs merged into the span. When both arguments are the same object
// only canonical pairs with match_start >= base_start + min_len are compared.
// Throws ConfigError when the window-pair count exceeds max_window_pairs
// (the oracle is for test-scale inputs; raise the cap deliberately).
std::vector<PassagePair> brute_force_find(const Corpus& corpus_a,
                                          const Corpus& corpus_b, int min_len,
                                          const ValidationParams& params,
                                          int max_gap = 8,
                                          uint64_t max_window_pairs = 100000);

}  // namespace parallels
