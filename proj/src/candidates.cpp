#include "gapfill/candidates.hpp"

#include <algorithm>
#include <unordered_set>

namespace gapfill {

StaticLexicon build_static_lexicon(const Vocabulary& vocab, std::uint32_t k) {
  if (k < 1) throw ContractError("static lexicon size must be >= 1");
  StaticLexicon lex;
  lex.k = k;
  lex.entries.reserve(vocab.size());
  for (TokenId id = kFirstWordId; id < vocab.size(); ++id)
    lex.entries.push_back(id);
  std::sort(lex.entries.begin(), lex.entries.end(),
            [&](TokenId a, TokenId b) {
              const Count ca = vocab.unigram_count(a);
              const Count cb = vocab.unigram_count(b);
              if (ca != cb) return ca > cb;
              return vocab.surface(a) < vocab.surface(b);
            });
  if (lex.entries.size() > k) lex.entries.resize(k);
  return lex;
}

std::vector<TokenId> dynamic_candidates(TokenId left, TokenId right,
                                        const GapTables& tables,
                                        const Vocabulary& vocab,
                                        std::size_t cap) {
  const auto* mids = tables.middle_counts(left, right);
  if (!mids) return {};
  std::vector<std::pair<TokenId, Count>> ranked;
  ranked.reserve(mids->size());
  for (const auto& [w, c] : *mids)
    if (!is_sentinel(w)) ranked.emplace_back(w, c);
  std::sort(ranked.begin(), ranked.end(),
            [&](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              const Count ua = vocab.unigram_count(a.first);
              const Count ub = vocab.unigram_count(b.first);
              if (ua != ub) return ua > ub;
              return vocab.surface(a.first) < vocab.surface(b.first);
            });
  if (ranked.size() > cap) ranked.resize(cap);
  std::vector<TokenId> out;
  out.reserve(ranked.size());
  for (const auto& [w, c] : ranked) out.push_back(w);
  return out;
}

CandidateSet candidate_set(TokenId left, TokenId right,
                           const StaticLexicon& lexicon,
                           const GapTables& tables, const Vocabulary& vocab,
                           CandidateMode mode, std::size_t dynamic_cap) {
  CandidateSet set;
  std::unordered_set<TokenId> seen;
  if (mode != CandidateMode::kStaticOnly) {
    for (TokenId id : dynamic_candidates(left, right, tables, vocab,
                                         dynamic_cap)) {
      set.items.push_back({id, CandidateSource::kDynamic});
      seen.insert(id);
    }
  }
  if (mode != CandidateMode::kDynamicOnly) {
    for (TokenId id : lexicon.entries) {
      if (seen.contains(id)) {
        for (auto& item : set.items)
          if (item.id == id) item.source = CandidateSource::kBoth;
        continue;
      }
      set.items.push_back({id, CandidateSource::kStatic});
    }
  }
  return set;
}

}  // namespace gapfill
