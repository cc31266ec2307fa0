#include "parallels/cluster.hpp"

#include <algorithm>

namespace parallels {

std::vector<MatchPoint> collect_matches(const SkipGramIndex& index,
                                        uint32_t vicinity,
                                        uint32_t query_begin,
                                        uint32_t query_end) {
  std::vector<MatchPoint> points;
  std::vector<MatchPoint> hits;
  const uint32_t end = std::min<uint32_t>(
      query_end, static_cast<uint32_t>(index.corpus().size()));

  for (uint32_t pos = query_begin; pos < end; ++pos) {
    hits.clear();
    index.query(pos, vicinity, hits);
    for (MatchPoint mp : hits) {
      if (mp.base_pos > mp.match_pos) {
        std::swap(mp.base_pos, mp.match_pos);
        std::swap(mp.base_doc, mp.match_doc);
        std::swap(mp.base_width, mp.match_width);
      }
      points.push_back(mp);
    }
  }

  std::sort(points.begin(), points.end(),
            [](const MatchPoint& a, const MatchPoint& b) {
              if (a.base_pos != b.base_pos) return a.base_pos < b.base_pos;
              return a.match_pos < b.match_pos;
            });

  // In self-comparison each pair surfaces from both of its ends; fold to one
  // point keeping the maxima (the two directions describe the same hits).
  auto write = points.begin();
  for (auto it = points.begin(); it != points.end();) {
    MatchPoint folded = *it;
    for (++it; it != points.end() && it->base_pos == folded.base_pos &&
               it->match_pos == folded.match_pos;
         ++it) {
      folded.multiplicity = std::max(folded.multiplicity, it->multiplicity);
      folded.base_width = std::max(folded.base_width, it->base_width);
      folded.match_width = std::max(folded.match_width, it->match_width);
    }
    *write++ = folded;
  }
  points.erase(write, points.end());
  return points;
}

std::vector<std::vector<MatchPoint>> bin_by_offset(
    const std::vector<MatchPoint>& points, int max_gap) {
  std::vector<std::vector<MatchPoint>> groups;
  if (points.empty()) return groups;

  std::vector<MatchPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const MatchPoint& a, const MatchPoint& b) {
              if (a.offset() != b.offset()) return a.offset() < b.offset();
              if (a.base_pos != b.base_pos) return a.base_pos < b.base_pos;
              return a.match_pos < b.match_pos;
            });

  groups.emplace_back();
  groups.back().push_back(sorted[0]);
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].offset() - sorted[i - 1].offset() > max_gap)
      groups.emplace_back();
    groups.back().push_back(sorted[i]);
  }

  for (auto& group : groups) {
    std::sort(group.begin(), group.end(),
              [](const MatchPoint& a, const MatchPoint& b) {
                if (a.base_pos != b.base_pos) return a.base_pos < b.base_pos;
                return a.match_pos < b.match_pos;
              });
  }
  return groups;
}

namespace {

struct Chain {
  uint32_t base_start, match_start;
  uint32_t max_base_end, max_match_end;
  uint32_t last_base, last_match;
  uint16_t base_doc, match_doc;
  uint32_t support;
};

bool meets_span_rule(const PassagePair& pair, const ClusterParams& params) {
  const uint32_t longer = std::max(pair.base_len(), pair.match_len());
  const uint32_t shorter = std::min(pair.base_len(), pair.match_len());
  return longer >= static_cast<uint32_t>(params.min_span) &&
         static_cast<int>(shorter) >= params.min_span - params.max_gap;
}

void emit_if_qualifying(const Chain& chain, const ClusterParams& params,
                        bool require_span, std::vector<PassagePair>& out) {
  if (chain.support < static_cast<uint32_t>(params.min_support)) return;

  PassagePair pair;
  pair.base_start = chain.base_start;
  pair.base_end = chain.max_base_end;
  pair.match_start = chain.match_start;
  pair.match_end = chain.max_match_end;
  pair.base_doc = chain.base_doc;
  pair.match_doc = chain.match_doc;
  pair.support = chain.support;
  if (require_span && !meets_span_rule(pair, params)) return;
  out.push_back(pair);
}

// The chaining walk shared by chain_clusters and cluster_passages. With
// require_span false a chain only needs min_support to come out; the span
// rule is the caller's business.
std::vector<PassagePair> chain_groups(
    const std::vector<std::vector<MatchPoint>>& groups,
    const ClusterParams& params, bool require_span) {
  std::vector<PassagePair> out;
  const int64_t j = params.max_gap;
  std::vector<Chain> open;

  for (const auto& group : groups) {
    open.clear();
    for (const MatchPoint& p : group) {
      // Retire chains this point (and every later one) starts too far past.
      for (size_t c = 0; c < open.size();) {
        if (static_cast<int64_t>(p.base_pos) -
                static_cast<int64_t>(open[c].max_base_end) - 1 > j) {
          emit_if_qualifying(open[c], params, require_span, out);
          open[c] = open.back();
          open.pop_back();
        } else {
          ++c;
        }
      }

      // Attach to the qualifying chain with the greatest last point.
      int best = -1;
      for (size_t c = 0; c < open.size(); ++c) {
        const Chain& chain = open[c];
        if (chain.base_doc != p.base_doc || chain.match_doc != p.match_doc)
          continue;
        if (p.match_pos < chain.last_match) continue;
        if (static_cast<int64_t>(p.match_pos) -
                static_cast<int64_t>(chain.max_match_end) - 1 > j)
          continue;
        if (best < 0 || chain.last_base > open[best].last_base ||
            (chain.last_base == open[best].last_base &&
             chain.last_match > open[best].last_match))
          best = static_cast<int>(c);
      }

      if (best >= 0) {
        Chain& chain = open[best];
        chain.last_base = p.base_pos;
        chain.last_match = p.match_pos;
        chain.max_base_end =
            std::max(chain.max_base_end, p.base_pos + p.base_width - 1);
        chain.max_match_end =
            std::max(chain.max_match_end, p.match_pos + p.match_width - 1);
        chain.support++;
      } else {
        Chain chain;
        chain.base_start = p.base_pos;
        chain.match_start = p.match_pos;
        chain.max_base_end = p.base_pos + p.base_width - 1;
        chain.max_match_end = p.match_pos + p.match_width - 1;
        chain.last_base = p.base_pos;
        chain.last_match = p.match_pos;
        chain.base_doc = p.base_doc;
        chain.match_doc = p.match_doc;
        chain.support = 1;
        open.push_back(chain);
      }
    }
    for (const Chain& chain : open)
      emit_if_qualifying(chain, params, require_span, out);
  }

  std::sort(out.begin(), out.end(), [](const PassagePair& a, const PassagePair& b) {
    if (a.base_doc != b.base_doc) return a.base_doc < b.base_doc;
    if (a.base_start != b.base_start) return a.base_start < b.base_start;
    if (a.base_end != b.base_end) return a.base_end < b.base_end;
    if (a.match_doc != b.match_doc) return a.match_doc < b.match_doc;
    return a.match_start < b.match_start;
  });
  return out;
}

}  // namespace

std::vector<PassagePair> chain_clusters(
    const std::vector<std::vector<MatchPoint>>& groups,
    const ClusterParams& params) {
  return chain_groups(groups, params, true);
}

namespace {

bool spans_mergeable(uint32_t s1, uint32_t e1, uint32_t s2, uint32_t e2,
                     int max_gap) {
  // Words strictly between the spans (negative when they overlap).
  const int64_t gap = static_cast<int64_t>(std::max(s1, s2)) -
                      static_cast<int64_t>(std::min(e1, e2)) - 1;
  return gap <= max_gap;
}

bool pairs_mergeable(const PassagePair& a, const PassagePair& b, int max_gap) {
  return a.base_doc == b.base_doc && a.match_doc == b.match_doc &&
         spans_mergeable(a.base_start, a.base_end, b.base_start, b.base_end,
                         max_gap) &&
         spans_mergeable(a.match_start, a.match_end, b.match_start,
                         b.match_end, max_gap);
}

}  // namespace

std::vector<PassagePair> merge_overlapping(std::vector<PassagePair> pairs,
                                           int max_gap) {
  std::sort(pairs.begin(), pairs.end(),
            [](const PassagePair& a, const PassagePair& b) {
              if (a.base_doc != b.base_doc) return a.base_doc < b.base_doc;
              if (a.match_doc != b.match_doc) return a.match_doc < b.match_doc;
              if (a.base_start != b.base_start) return a.base_start < b.base_start;
              if (a.match_start != b.match_start)
                return a.match_start < b.match_start;
              if (a.base_end != b.base_end) return a.base_end < b.base_end;
              return a.match_end < b.match_end;
            });

  std::vector<PassagePair> merged;
  for (const PassagePair& pair : pairs) {
    PassagePair current = pair;
    // Absorb every mergeable pair already in the result; absorbing can widen
    // the spans, so rescan until stable.
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < merged.size(); ++i) {
        if (!pairs_mergeable(merged[i], current, max_gap)) continue;
        current.base_start = std::min(current.base_start, merged[i].base_start);
        current.base_end = std::max(current.base_end, merged[i].base_end);
        current.match_start = std::min(current.match_start, merged[i].match_start);
        current.match_end = std::max(current.match_end, merged[i].match_end);
        current.support += merged[i].support;
        merged[i] = merged.back();
        merged.pop_back();
        changed = true;
        break;
      }
    }
    merged.push_back(current);
  }

  std::sort(merged.begin(), merged.end(),
            [](const PassagePair& a, const PassagePair& b) {
              if (a.base_doc != b.base_doc) return a.base_doc < b.base_doc;
              if (a.base_start != b.base_start) return a.base_start < b.base_start;
              if (a.base_end != b.base_end) return a.base_end < b.base_end;
              if (a.match_doc != b.match_doc) return a.match_doc < b.match_doc;
              return a.match_start < b.match_start;
            });
  return merged;
}

std::vector<PassagePair> cluster_passages(const std::vector<MatchPoint>& points,
                                          const ClusterParams& params) {
  const auto groups = bin_by_offset(points, params.max_gap);
  // Greedy chaining can split one passage into fragments when a stray
  // agreement just off the diagonal poaches a chain's frontier, so the span
  // rule is applied after merging: fragments of a real passage overlap and
  // recombine, while support still gates each chain before the merge.
  auto pairs = chain_groups(groups, params, false);
  pairs = merge_overlapping(std::move(pairs), params.max_gap);
  std::erase_if(pairs, [&](const PassagePair& pair) {
    return !meets_span_rule(pair, params);
  });
  return pairs;
}

}  // namespace parallels
