#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "gapfill/ngram_store.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

// "together" counts adjacency of a pair inside a sentence; "separate"
// counts the pair with exactly one word between; "middles" records which
// words filled that gap. Sentinels never appear in any table and skip
// patterns never cross a sentence boundary.
struct GapTables {
  std::unordered_map<std::uint64_t, Count> together;
  std::unordered_map<std::uint64_t, Count> separate;
  std::unordered_map<std::uint64_t, std::unordered_map<TokenId, Count>> middles;
  bool filtered = false;

  Count together_count(TokenId a, TokenId b) const {
    auto it = together.find(pair_key(a, b));
    return it == together.end() ? 0 : it->second;
  }
  Count separate_count(TokenId a, TokenId b) const {
    auto it = separate.find(pair_key(a, b));
    return it == separate.end() ? 0 : it->second;
  }
  const std::unordered_map<TokenId, Count>* middle_counts(TokenId a,
                                                          TokenId b) const {
    auto it = middles.find(pair_key(a, b));
    return it == middles.end() ? nullptr : &it->second;
  }

  // separate/together; +infinity when only separate evidence exists,
  // 0.0 when there is no evidence at all.
  double separation_ratio(TokenId a, TokenId b) const;
};

using BigramFilter = std::unordered_set<std::uint64_t>;

// Streams the corpus once and fills all three tables. Token surfaces are
// resolved through the given vocabulary (OOV -> UNK). If a filter is
// supplied only the listed pairs are stored; middle entries with count
// below min_count are pruned after the pass.
GapTables build_gap_tables(const CorpusSource& corpus, const Vocabulary& vocab,
                           const BigramFilter* bigram_filter = nullptr,
                           Count min_count = 1);

// Collects every interior adjacent pair of the given token files into a
// filter set (for the lazy per-test-set build mode).
BigramFilter filter_from_sentences(const CorpusSource& corpus,
                                   const Vocabulary& vocab);

}  // namespace gapfill
