#include "gapfill/katz_lm.hpp"

#include <algorithm>
#include <cmath>

namespace gapfill {

namespace {

constexpr double kProbFloor = 1e-12;
constexpr double kDiscountEps = 1e-9;

}  // namespace

KatzModel::Backoff KatzModel::make_backoff(double taken_high,
                                           double taken_low) {
  double num = 1.0 - taken_high;
  double den = 1.0 - taken_low;
  if (num < 0.0) num = 0.0;
  if (den <= 1e-12) {
    // The observed continuations carry the whole lower-order distribution:
    // backing off has nowhere to put the leftover mass, so hand it back to
    // the observed continuations instead of losing it.
    return {0.0, taken_high > 0.0 ? 1.0 / taken_high : 1.0};
  }
  return {num / den, 1.0};
}

KatzModel::KatzModel(const Vocabulary& vocab, const NGramCounts& counts,
                     int discount_threshold)
    : vocab_(&vocab), counts_(&counts), k_(discount_threshold) {
  if (k_ < 2 || k_ > kMaxCountOfCounts)
    throw ContractError("discount threshold out of range");

  for (int order = 1; order <= 3; ++order) {
    auto& d = discounts_[order];
    d.assign(k_, 1.0);
    const Count* n = counts.counts_of_counts[order];
    if (n[1] == 0) {
      degenerate_[order] = true;
      continue;
    }
    const double big_mass =
        static_cast<double>(k_) * static_cast<double>(n[k_]) /
        static_cast<double>(n[1]);
    for (Count r = 1; r < static_cast<Count>(k_); ++r) {
      if (n[r] == 0 || n[r + 1] == 0 || big_mass >= 1.0) {
        degenerate_[order] = true;
        continue;  // d_r stays 1: no discounting possible at this count
      }
      const double r_star = static_cast<double>(r + 1) *
                            static_cast<double>(n[r + 1]) /
                            static_cast<double>(n[r]);
      double dr = (r_star / static_cast<double>(r) - big_mass) /
                  (1.0 - big_mass);
      dr = std::clamp(dr, kDiscountEps, 1.0);
      d[r] = dr;
    }
  }

  // Discounted ML unigrams over everything except BOS; leftover mass on
  // UNK. Accumulation runs in id order so the result is bit-stable.
  const std::size_t v = counts.c1.size();
  p_uni_.assign(std::max<std::size_t>(v, kFirstWordId), 0.0);
  Count m_total = 0;
  for (TokenId id = 0; id < v; ++id)
    if (id != kBos) m_total += counts.c1[id];
  if (m_total == 0) throw ContractError("model built from empty counts");
  double taken = 0.0;
  for (TokenId id = 0; id < v; ++id) {
    if (id == kBos || counts.c1[id] == 0) continue;
    const double p = discount_coefficient(counts.c1[id], 1) *
                     static_cast<double>(counts.c1[id]) /
                     static_cast<double>(m_total);
    p_uni_[id] = p;
    taken += p;
  }
  p_uni_[kUnk] += std::max(0.0, 1.0 - taken);
  if (p_uni_[kUnk] <= 0.0) {
    // Nothing was discounted and UNK never seen: reserve a sliver so no
    // word ever scores exactly zero, rescaling the rest to keep the sum 1.
    const double eps = 1e-10;
    for (double& p : p_uni_) p *= 1.0 - eps;
    p_uni_[kUnk] = eps;
  }

  // Back-off weights, computed from sorted keys for bit-stability.
  alpha2_.assign(p_uni_.size(), Backoff{});
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(counts.c2.size());
    for (const auto& [k, c] : counts.c2) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    std::size_t i = 0;
    while (i < keys.size()) {
      const TokenId ctx = pair_first(keys[i]);
      const double c1 = static_cast<double>(counts.c1[ctx]);
      double taken_hi = 0.0, taken_lo = 0.0;
      for (; i < keys.size() && pair_first(keys[i]) == ctx; ++i) {
        const TokenId w = pair_second(keys[i]);
        if (w == kBos) continue;  // BOS is never a predicted word
        const Count c = counts.c2.at(keys[i]);
        taken_hi += discount_coefficient(c, 2) * static_cast<double>(c) / c1;
        taken_lo += p_uni_[w];
      }
      alpha2_[ctx] = make_backoff(taken_hi, taken_lo);
    }
  }
  {
    std::vector<TriKey> keys;
    keys.reserve(counts.c3.size());
    for (const auto& [k, c] : counts.c3) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    alpha3_.reserve(counts.c2.size());
    std::size_t i = 0;
    while (i < keys.size()) {
      const TokenId a = keys[i].a, b = keys[i].b;
      const double c2 = static_cast<double>(counts.count2(a, b));
      double taken_hi = 0.0, taken_lo = 0.0;
      for (; i < keys.size() && keys[i].a == a && keys[i].b == b; ++i) {
        const Count c = counts.c3.at(keys[i]);
        taken_hi += discount_coefficient(c, 3) * static_cast<double>(c) / c2;
        taken_lo += prob_bigram(keys[i].c, b);
      }
      alpha3_.emplace(pair_key(a, b), make_backoff(taken_hi, taken_lo));
    }
  }
}

double KatzModel::discount_coefficient(Count r, int order) const {
  if (order < 1 || order > 3) throw ContractError("order must be 1..3");
  if (r == 0) throw ContractError("cannot discount a zero count");
  if (r >= static_cast<Count>(k_)) return 1.0;
  return discounts_[order][r];
}

double KatzModel::prob_unigram(TokenId w) const {
  const double p = w < p_uni_.size() ? p_uni_[w] : p_uni_[kUnk];
  return std::max(p, kProbFloor);
}

double KatzModel::prob_bigram(TokenId w, TokenId w2) const {
  if (w == kBos) return kProbFloor;
  if (counts_->count1(w2) == 0) return prob_unigram(w);
  const Backoff bo = w2 < alpha2_.size() ? alpha2_[w2] : Backoff{};
  const Count c = counts_->count2(w2, w);
  if (c > 0)
    return bo.scale * discount_coefficient(c, 2) * static_cast<double>(c) /
           static_cast<double>(counts_->count1(w2));
  return std::max(bo.alpha * prob_unigram(w), kProbFloor);
}

double KatzModel::prob(TokenId w, TokenId w1, TokenId w2) const {
  const Count c2 = counts_->count2(w1, w2);
  if (c2 == 0) return std::max(prob_bigram(w, w2), kProbFloor);
  auto it = alpha3_.find(pair_key(w1, w2));
  const Backoff bo = it == alpha3_.end() ? Backoff{} : it->second;
  const Count c = counts_->count3(w1, w2, w);
  if (c > 0)
    return bo.scale * discount_coefficient(c, 3) * static_cast<double>(c) /
           static_cast<double>(c2);
  return std::max(bo.alpha * prob_bigram(w, w2), kProbFloor);
}

double KatzModel::prob(TokenId w, std::span<const TokenId> context) const {
  switch (context.size()) {
    case 0:
      return prob_unigram(w);
    case 1:
      return std::max(prob_bigram(w, context[0]), kProbFloor);
    case 2:
      return prob(w, context[0], context[1]);
    default:
      throw ContractError("context must have 0..2 tokens");
  }
}

double KatzModel::sentence_logprob(std::span<const TokenId> sentence) const {
  if (sentence.empty()) throw DataError("empty sentence");
  const std::size_t m = sentence.size();
  auto at = [&](std::size_t i) -> TokenId {
    if (i < 2) return kBos;
    if (i < m + 2) return sentence[i - 2];
    return kEos;
  };
  long double sum = 0.0L;
  for (std::size_t i = 2; i < m + 3; ++i)
    sum += std::log(prob(at(i), at(i - 2), at(i - 1)));
  return static_cast<double>(sum);
}

double KatzModel::insertion_delta(std::span<const TokenId> sentence,
                                  std::size_t gap, TokenId w) const {
  const std::size_t m = sentence.size();
  if (gap < 1 || gap > m - 1 || m < 2)
    throw ContractError("insertion gap out of range");
  const TokenId a = gap >= 2 ? sentence[gap - 2] : kBos;
  const TokenId b = sentence[gap - 1];
  const TokenId c = sentence[gap];
  const TokenId d = gap + 1 < m ? sentence[gap + 1] : kEos;
  long double delta = 0.0L;
  delta += std::log(prob(w, a, b));
  delta += std::log(prob(c, b, w));
  delta += std::log(prob(d, w, c));
  delta -= std::log(prob(c, a, b));
  delta -= std::log(prob(d, b, c));
  return static_cast<double>(delta);
}

}  // namespace gapfill
