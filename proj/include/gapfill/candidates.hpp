#pragma once

#include <cstdint>
#include <vector>

#include "gapfill/gap_tables.hpp"
#include "gapfill/ngram_store.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

// Global top-K-by-frequency lexicon; punctuation tokens compete like any
// other word, sentinels and UNK are excluded.
struct StaticLexicon {
  std::uint32_t k = 0;
  std::vector<TokenId> entries;  // count desc, surface asc
};

StaticLexicon build_static_lexicon(const Vocabulary& vocab, std::uint32_t k);

// Words observed between the gap pair in training, ranked by gap count
// desc, unigram count desc, surface asc; truncated to cap.
std::vector<TokenId> dynamic_candidates(TokenId left, TokenId right,
                                        const GapTables& tables,
                                        const Vocabulary& vocab,
                                        std::size_t cap);

enum class CandidateMode { kStaticOnly, kDynamicOnly, kCombined };

enum class CandidateSource : std::uint8_t { kStatic, kDynamic, kBoth };

struct CandidateSet {
  struct Item {
    TokenId id;
    CandidateSource source;
  };
  std::vector<Item> items;  // dynamic order first, then remaining static

  bool contains(TokenId id) const {
    for (const auto& it : items)
      if (it.id == id) return true;
    return false;
  }
};

CandidateSet candidate_set(TokenId left, TokenId right,
                           const StaticLexicon& lexicon,
                           const GapTables& tables, const Vocabulary& vocab,
                           CandidateMode mode, std::size_t dynamic_cap);

}  // namespace gapfill
