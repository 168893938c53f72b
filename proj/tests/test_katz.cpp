#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "gapfill/katz_lm.hpp"
#include "gapfill/ngram_store.hpp"
#include "helpers.hpp"

using namespace gapfill;
using namespace gapfill::testing;

namespace {

double sum_over_vocab(const KatzModel& model, std::vector<TokenId> ctx) {
  double sum = 0.0;
  for (TokenId w = 0; w < model.vocab().size(); ++w) {
    if (w == kBos) continue;
    sum += model.prob(w, ctx);
  }
  return sum;
}

std::vector<TokenId> to_ids(const Vocabulary& vocab, const std::string& line) {
  std::vector<TokenId> ids;
  for (const auto& t : tokenize_line(line)) ids.push_back(vocab.lookup(t));
  return ids;
}

}  // namespace

TEST_CASE("discount coefficients follow the Good-Turing formula") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);

  SUBCASE("counts at or above the threshold are undiscounted") {
    KatzModel model(vocab, counts);
    CHECK(model.discount_coefficient(5, 2) == 1.0);
    CHECK(model.discount_coefficient(1000, 3) == 1.0);
  }
  SUBCASE("N1=2 N2=1 gives d1 = 1") {
    for (int r = 1; r <= kMaxCountOfCounts; ++r)
      counts.counts_of_counts[2][r] = 0;
    counts.counts_of_counts[2][1] = 2;
    counts.counts_of_counts[2][2] = 1;
    KatzModel model(vocab, counts);
    CHECK(model.discount_coefficient(1, 2) == doctest::Approx(1.0));
  }
  SUBCASE("N1=4 N2=1 gives d1 = 0.5") {
    for (int r = 1; r <= kMaxCountOfCounts; ++r)
      counts.counts_of_counts[2][r] = 0;
    counts.counts_of_counts[2][1] = 4;
    counts.counts_of_counts[2][2] = 1;
    KatzModel model(vocab, counts);
    CHECK(model.discount_coefficient(1, 2) == doctest::Approx(0.5));
  }
  SUBCASE("degenerate counts-of-counts fall back to 1 with a warning flag") {
    for (int r = 1; r <= kMaxCountOfCounts; ++r)
      counts.counts_of_counts[3][r] = 0;
    KatzModel model(vocab, counts);
    for (Count r = 1; r < 5; ++r)
      CHECK(model.discount_coefficient(r, 3) == 1.0);
    CHECK(model.degenerate_discounts(3));
  }
  SUBCASE("contract checks") {
    KatzModel model(vocab, counts);
    CHECK_THROWS_AS(model.discount_coefficient(0, 2), ContractError);
    CHECK_THROWS_AS(model.discount_coefficient(1, 4), ContractError);
  }
}

TEST_CASE("identical trigram evidence gives identical probabilities") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  KatzModel model(vocab, counts);
  const TokenId sat = vocab.lookup("sat"), on = vocab.lookup("on");
  CHECK(model.prob(vocab.lookup("the"), sat, on) ==
        model.prob(vocab.lookup("a"), sat, on));
}

TEST_CASE("entirely unseen context falls all the way to the unigram") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  KatzModel model(vocab, counts);
  const TokenId the = vocab.lookup("the");
  // UNK never occurred, so (UNK, UNK) is an unseen context at every order.
  CHECK(model.prob(the, kUnk, kUnk) ==
        model.prob(the, std::vector<TokenId>{}));
}

TEST_CASE("distributions normalize at every order") {
  std::mt19937_64 rng(3);
  auto lines = random_corpus(rng, 4000);
  auto [vocab, counts] = build_counts(memory_corpus(lines), 1);
  KatzModel model(vocab, counts);

  CHECK(sum_over_vocab(model, {}) == doctest::Approx(1.0).epsilon(1e-6));

  // Sentence-start contexts: the (BOS, BOS) bigram exists as a context but
  // BOS itself must carry no prediction mass.
  CHECK(sum_over_vocab(model, {kBos}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sum_over_vocab(model, {kBos, kBos}) ==
        doctest::Approx(1.0).epsilon(1e-6));

  int sampled = 0;
  for (const auto& [k, c] : counts.c2) {
    const TokenId ctx = pair_first(k);
    if (ctx == kEos) continue;
    CHECK(sum_over_vocab(model, {ctx}) ==
          doctest::Approx(1.0).epsilon(1e-6));
    if (++sampled >= 20) break;
  }
  sampled = 0;
  for (const auto& [k, c] : counts.c3) {
    CHECK(sum_over_vocab(model, {k.a, k.b}) ==
          doctest::Approx(1.0).epsilon(1e-6));
    if (++sampled >= 20) break;
  }
}

TEST_CASE("removing all trigrams reduces the model to its bigram level") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  NGramCounts bi_only = counts;
  bi_only.c3.clear();
  bi_only.recompute_counts_of_counts();
  KatzModel full(vocab, counts);
  KatzModel reduced(vocab, bi_only);
  for (const auto& [k, c] : counts.c2) {
    const TokenId w1 = pair_first(k), w2 = pair_second(k);
    for (TokenId w = 0; w < vocab.size(); ++w) {
      if (w == kBos) continue;
      CHECK(reduced.prob(w, w1, w2) ==
            reduced.prob(w, std::vector<TokenId>{w2}));
    }
  }
}

TEST_CASE("more trigram evidence never lowers the probability") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  KatzModel base(vocab, counts);
  const TokenId sat = vocab.lookup("sat"), on = vocab.lookup("on");
  const TokenId the = vocab.lookup("the");
  const double before = base.prob(the, sat, on);
  NGramCounts bumped = counts;
  ++bumped.c3[TriKey{sat, on, the}];
  bumped.recompute_counts_of_counts();
  KatzModel more(vocab, bumped);
  CHECK(more.prob(the, sat, on) >= before);
}

TEST_CASE("sentence log-probability unrolls the trigram chain") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  KatzModel model(vocab, counts);
  const TokenId a = vocab.lookup("a");
  const double expected =
      std::log(model.prob(a, kBos, kBos)) + std::log(model.prob(kEos, kBos, a));
  CHECK(model.sentence_logprob(std::vector<TokenId>{a}) ==
        doctest::Approx(expected).epsilon(1e-12));

  const auto good = to_ids(vocab, "the cat sat on the mat .");
  const auto bad = to_ids(vocab, "the cat sat on zebra mat .");
  CHECK(model.sentence_logprob(good) > model.sentence_logprob(bad));
  CHECK(model.sentence_logprob(good) < 0.0);
  CHECK(std::isfinite(model.sentence_logprob(bad)));
  CHECK_THROWS_AS(model.sentence_logprob(std::vector<TokenId>{}), DataError);
}

TEST_CASE("insertion delta equals the naive full-sentence difference") {
  std::mt19937_64 rng(17);
  auto lines = random_corpus(rng, 5000);
  auto [vocab, counts] = build_counts(memory_corpus(lines), 1);
  KatzModel model(vocab, counts);

  std::uniform_int_distribution<std::size_t> len(2, 20);
  std::uniform_int_distribution<TokenId> word(kFirstWordId,
                                              static_cast<TokenId>(
                                                  vocab.size() - 1));
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = len(rng);
    std::vector<TokenId> s(m);
    for (auto& t : s) t = word(rng);
    std::uniform_int_distribution<std::size_t> gap_dist(1, m - 1);
    const std::size_t gap = gap_dist(rng);
    const TokenId w = word(rng);

    std::vector<TokenId> inserted = s;
    inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(gap), w);
    const double naive =
        model.sentence_logprob(inserted) - model.sentence_logprob(s);
    CHECK(model.insertion_delta(s, gap, w) ==
          doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("insertion delta ties exactly on symmetric counts") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  KatzModel model(vocab, counts);
  const auto s = to_ids(vocab, "the cat sat on mat .");
  CHECK(model.insertion_delta(s, 4, vocab.lookup("the")) ==
        model.insertion_delta(s, 4, vocab.lookup("a")));
  CHECK_THROWS_AS(model.insertion_delta(s, 0, vocab.lookup("the")),
                  ContractError);
  CHECK_THROWS_AS(model.insertion_delta(s, s.size(), vocab.lookup("the")),
                  ContractError);
}
