#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "gapfill/ngram_store.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

// Katz back-off trigram model with Good-Turing discounting. Immutable
// after construction; all back-off weights are precomputed in a fixed
// (sorted-key) order so probabilities are bit-stable across rebuilds and
// save/load cycles.
class KatzModel {
 public:
  static constexpr int kDefaultDiscountThreshold = 5;

  KatzModel(const Vocabulary& vocab, const NGramCounts& counts,
            int discount_threshold = kDefaultDiscountThreshold);

  // Good-Turing/Katz discount d_r for raw count r at the given order;
  // 1 for r >= k, and 1 when the counts-of-counts are too degenerate to
  // estimate a discount.
  double discount_coefficient(Count r, int order) const;

  // P(w | context) with 0..2 context tokens. Never exactly zero.
  double prob(TokenId w, std::span<const TokenId> context) const;
  double prob(TokenId w, TokenId w1, TokenId w2) const;  // trigram context

  // Natural-log probability of the boundary-augmented sentence
  // (covers every real token and EOS). Throws DataError when empty.
  double sentence_logprob(std::span<const TokenId> sentence) const;

  // sentence_logprob(sentence with w inserted at gap) - sentence_logprob
  // (sentence), from the five trigram terms the insertion touches.
  // gap is 1-based: the word goes between token gap and gap+1.
  double insertion_delta(std::span<const TokenId> sentence, std::size_t gap,
                         TokenId w) const;

  int discount_threshold() const { return k_; }
  bool degenerate_discounts(int order) const { return degenerate_[order]; }
  const Vocabulary& vocab() const { return *vocab_; }
  const NGramCounts& counts() const { return *counts_; }

 private:
  // Back-off state for one context. When the observed continuations already
  // exhaust the lower-order distribution there is nothing to back off to;
  // alpha drops to 0 and scale returns the discounted leftover mass to the
  // observed continuations so the distribution still sums to one.
  struct Backoff {
    double alpha = 1.0;
    double scale = 1.0;
  };
  static Backoff make_backoff(double taken_high, double taken_low);

  double prob_unigram(TokenId w) const;
  double prob_bigram(TokenId w, TokenId w2) const;

  const Vocabulary* vocab_;
  const NGramCounts* counts_;
  int k_;
  // discounts_[order][r] for r in 0..k-1 (index 0 unused).
  std::vector<double> discounts_[4];
  bool degenerate_[4] = {};
  std::vector<double> p_uni_;      // per id; BOS gets the floor only
  std::vector<Backoff> alpha2_;    // per context word
  std::unordered_map<std::uint64_t, Backoff> alpha3_;  // per context pair
};

}  // namespace gapfill
