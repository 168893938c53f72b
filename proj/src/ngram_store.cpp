#include "gapfill/ngram_store.hpp"

#include "gapfill/trainer.hpp"

namespace gapfill {

Vocabulary::Vocabulary() {
  surfaces_ = {kUnkSurface, kBosSurface, kEosSurface};
  counts_ = {0, 0, 0};
  ids_.emplace(kUnkSurface, kUnk);
  ids_.emplace(kBosSurface, kBos);
  ids_.emplace(kEosSurface, kEos);
}

TokenId Vocabulary::intern(std::string_view surface) {
  auto it = ids_.find(std::string(surface));
  if (it != ids_.end()) return it->second;
  TokenId id = static_cast<TokenId>(surfaces_.size());
  surfaces_.emplace_back(surface);
  counts_.push_back(0);
  ids_.emplace(surfaces_.back(), id);
  return id;
}

TokenId Vocabulary::lookup(std::string_view surface) const {
  auto it = ids_.find(std::string(surface));
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::surface(TokenId id) const {
  if (id >= surfaces_.size()) throw ContractError("token id out of range");
  return surfaces_[id];
}

Count Vocabulary::unigram_count(TokenId id) const {
  return id < counts_.size() ? counts_[id] : 0;
}

void Vocabulary::add_count(TokenId id, Count n) {
  if (id >= counts_.size()) throw ContractError("token id out of range");
  counts_[id] += n;
}

Count NGramCounts::count(std::span<const TokenId> ngram) const {
  switch (ngram.size()) {
    case 1:
      return count1(ngram[0]);
    case 2:
      return count2(ngram[0], ngram[1]);
    case 3:
      return count3(ngram[0], ngram[1], ngram[2]);
    default:
      throw ContractError("n-gram order must be 1..3");
  }
}

void NGramCounts::recompute_counts_of_counts() {
  for (int order = 1; order <= 3; ++order)
    for (int r = 1; r <= kMaxCountOfCounts; ++r)
      counts_of_counts[order][r] = 0;
  for (Count c : c1)
    if (c >= 1 && c <= kMaxCountOfCounts) ++counts_of_counts[1][c];
  for (const auto& [k, c] : c2)
    if (c <= kMaxCountOfCounts) ++counts_of_counts[2][c];
  for (const auto& [k, c] : c3)
    if (c <= kMaxCountOfCounts) ++counts_of_counts[3][c];
}

std::pair<Vocabulary, NGramCounts> build_counts(const CorpusSource& corpus,
                                                Count min_count,
                                                BuildStats* stats) {
  auto trained = train_tables(corpus, min_count, 1, /*build_gaps=*/false);
  if (stats) *stats = trained.stats;
  return {std::move(trained.vocab), std::move(trained.counts)};
}

}  // namespace gapfill
