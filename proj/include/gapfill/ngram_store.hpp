#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gapfill/tokenizer.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

class Vocabulary {
 public:
  Vocabulary();

  // Returns the id for a surface, interning it if new.
  TokenId intern(std::string_view surface);

  // Returns the id for a surface, or kUnk if absent.
  TokenId lookup(std::string_view surface) const;

  const std::string& surface(TokenId id) const;

  // Corpus frequency of the token (sentinels carry their boundary counts).
  Count unigram_count(TokenId id) const;

  // Total non-sentinel corpus tokens.
  Count total_tokens() const { return total_tokens_; }

  std::size_t size() const { return surfaces_.size(); }

  void add_count(TokenId id, Count n);
  void set_total_tokens(Count n) { total_tokens_ = n; }

 private:
  std::unordered_map<std::string, TokenId> ids_;
  std::vector<std::string> surfaces_;
  std::vector<Count> counts_;
  Count total_tokens_ = 0;
};

// Counts-of-counts N_r for r = 1..kMaxCountOfCounts, per n-gram order.
inline constexpr int kMaxCountOfCounts = 6;

struct NGramCounts {
  std::vector<Count> c1;  // dense, indexed by TokenId
  std::unordered_map<std::uint64_t, Count> c2;
  std::unordered_map<TriKey, Count, TriKeyHash> c3;
  // counts_of_counts[order][r], order in 1..3, r in 1..kMaxCountOfCounts.
  Count counts_of_counts[4][kMaxCountOfCounts + 1] = {};

  Count count1(TokenId a) const {
    return a < c1.size() ? c1[a] : 0;
  }
  Count count2(TokenId a, TokenId b) const {
    auto it = c2.find(pair_key(a, b));
    return it == c2.end() ? 0 : it->second;
  }
  Count count3(TokenId a, TokenId b, TokenId c) const {
    auto it = c3.find(TriKey{a, b, c});
    return it == c3.end() ? 0 : it->second;
  }
  // Generic lookup; throws ContractError unless 1 <= |ngram| <= 3.
  Count count(std::span<const TokenId> ngram) const;

  void recompute_counts_of_counts();
};

struct BuildStats {
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;  // non-sentinel
  std::uint64_t skipped_lines = 0;
};

// One pass over the corpus: interns the vocabulary, counts 1..3-grams over
// boundary-augmented sentences, then maps tokens rarer than min_count to
// UNK and recounts the tables. Throws DataError on an empty corpus.
std::pair<Vocabulary, NGramCounts> build_counts(const CorpusSource& corpus,
                                                Count min_count,
                                                BuildStats* stats = nullptr);

}  // namespace gapfill
