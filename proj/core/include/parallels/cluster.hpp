#pragma once

#include <cstdint>
#include <vector>

#include "parallels/index.hpp"

namespace parallels {

// i / j / k: a passage pair needs at least min_support matching skip-grams on
// one drifting diagonal, with at most max_gap words between consecutive
// skip-grams on either axis, stretching across at least min_span words from
// the first skip-gram's start to the last one's end (the shorter side may
// fall short by at most max_gap).
struct ClusterParams {
  int min_support = 3;  // i
  int max_gap = 8;      // j
  int min_span = 20;    // k
};

// A reported parallel: two word spans (inclusive, corpus-global positions)
// plus the number of matching skip-grams supporting them. In self-comparison
// the pair is oriented canonically, base_start < match_start.
struct PassagePair {
  uint32_t base_start = 0;
  uint32_t base_end = 0;
  uint32_t match_start = 0;
  uint32_t match_end = 0;
  uint16_t base_doc = 0;
  uint16_t match_doc = 0;
  uint32_t support = 0;

  uint32_t base_len() const { return base_end - base_start + 1; }
  uint32_t match_len() const { return match_end - match_start + 1; }

  bool operator==(const PassagePair&) const = default;
};

// Queries every position in [query_begin, query_end) against the index and
// returns the union of matches, oriented with base_pos < match_pos, folded to
// one point per position pair (multiplicity and widths keep the maxima of the
// folded hits), sorted by (base_pos, match_pos). For cross-corpus search the
// query range is the second corpus's token range; the index side always comes
// out as base.
std::vector<MatchPoint> collect_matches(const SkipGramIndex& index,
                                        uint32_t vicinity,
                                        uint32_t query_begin = 0,
                                        uint32_t query_end = UINT32_MAX);

// Groups points so that any two whose offsets (base_pos - match_pos) lie
// within max_gap of each other land in the same group: the groups are maximal
// runs of the offset-sorted points with consecutive distinct offsets no more
// than max_gap apart. Within a group points are sorted by (base_pos,
// match_pos). Grouping is only a pruning step; chain_clusters decides actual
// membership.
std::vector<std::vector<MatchPoint>> bin_by_offset(
    const std::vector<MatchPoint>& points, int max_gap);

// Greedy left-to-right chaining inside each group. A point extends a chain
// when both documents agree, match_pos is non-decreasing, and the word count
// strictly between the chain's covered extent and the point is at most
// max_gap on both axes; of the chains that qualify the one whose last point
// is greatest wins. A chain becomes a PassagePair when its support reaches
// min_support and its spans meet the min_span criterion.
std::vector<PassagePair> chain_clusters(
    const std::vector<std::vector<MatchPoint>>& groups,
    const ClusterParams& params);

// Folds pairs whose base spans and match spans both overlap or abut within
// max_gap words (same documents) into one pair covering the union, summing
// support. Output sorted by (base_doc, base_start, base_end, match_doc,
// match_start).
std::vector<PassagePair> merge_overlapping(std::vector<PassagePair> pairs,
                                           int max_gap);

// The full clustering step: bin_by_offset, chaining, merge_overlapping, then
// the span acceptance on the merged pairs. Applying the span rule after the
// merge (unlike chain_clusters) keeps a passage whole when stray agreements
// off its diagonal fragment the greedy chains; each fragment still needs
// min_support of its own.
std::vector<PassagePair> cluster_passages(const std::vector<MatchPoint>& points,
                                          const ClusterParams& params);

}  // namespace parallels
