#include "gapfill/gap_tables.hpp"

#include <limits>

namespace gapfill {

double GapTables::separation_ratio(TokenId a, TokenId b) const {
  const Count sep = separate_count(a, b);
  const Count tog = together_count(a, b);
  if (tog == 0)
    return sep == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(sep) / static_cast<double>(tog);
}

GapTables build_gap_tables(const CorpusSource& corpus, const Vocabulary& vocab,
                           const BigramFilter* bigram_filter, Count min_count) {
  GapTables tables;
  tables.filtered = bigram_filter != nullptr;
  corpus([&](const std::vector<std::string>& tokens) {
    const std::size_t m = tokens.size();
    std::vector<TokenId> ids(m);
    for (std::size_t i = 0; i < m; ++i) ids[i] = vocab.lookup(tokens[i]);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      std::uint64_t key = pair_key(ids[i], ids[i + 1]);
      if (bigram_filter && !bigram_filter->contains(key)) continue;
      ++tables.together[key];
    }
    for (std::size_t i = 0; i + 2 < m; ++i) {
      std::uint64_t key = pair_key(ids[i], ids[i + 2]);
      if (bigram_filter && !bigram_filter->contains(key)) continue;
      ++tables.separate[key];
      ++tables.middles[key][ids[i + 1]];
    }
  });
  if (min_count > 1) {
    for (auto it = tables.middles.begin(); it != tables.middles.end();) {
      auto& inner = it->second;
      for (auto mit = inner.begin(); mit != inner.end();)
        mit = (mit->second < min_count) ? inner.erase(mit) : std::next(mit);
      it = inner.empty() ? tables.middles.erase(it) : std::next(it);
    }
  }
  return tables;
}

BigramFilter filter_from_sentences(const CorpusSource& corpus,
                                   const Vocabulary& vocab) {
  BigramFilter filter;
  corpus([&](const std::vector<std::string>& tokens) {
    const std::size_t m = tokens.size();
    std::vector<TokenId> ids(m);
    for (std::size_t i = 0; i < m; ++i) ids[i] = vocab.lookup(tokens[i]);
    for (std::size_t i = 0; i + 1 < m; ++i)
      filter.insert(pair_key(ids[i], ids[i + 1]));
  });
  return filter;
}

}  // namespace gapfill
