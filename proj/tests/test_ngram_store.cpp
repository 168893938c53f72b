#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "gapfill/model_io.hpp"
#include "gapfill/ngram_store.hpp"
#include "gapfill/trainer.hpp"
#include "helpers.hpp"

using namespace gapfill;
using namespace gapfill::testing;

namespace {

Count query1(const Vocabulary& v, const NGramCounts& c, const char* a) {
  return c.count1(v.lookup(a));
}
Count query2(const Vocabulary& v, const NGramCounts& c, const char* a,
             const char* b) {
  return c.count2(v.lookup(a), v.lookup(b));
}
Count query3(const Vocabulary& v, const NGramCounts& c, const char* a,
             const char* b, const char* w) {
  return c.count3(v.lookup(a), v.lookup(b), v.lookup(w));
}

void check_against_oracle(const std::vector<std::string>& lines,
                          Count min_count) {
  auto [vocab, counts] = build_counts(memory_corpus(lines), min_count);
  auto oracle = oracle_counts(lines, min_count);
  CHECK(vocab.total_tokens() == oracle.total_tokens);

  std::size_t n1 = 0;
  for (const auto& [w, c] : oracle.c1) {
    CHECK(counts.count1(vocab.lookup(w)) == c);
    ++n1;
  }
  std::size_t stored1 = 0;
  for (Count c : counts.c1)
    if (c > 0) ++stored1;
  CHECK(stored1 == n1);

  for (const auto& [k, c] : oracle.c2)
    CHECK(counts.count2(vocab.lookup(k[0]), vocab.lookup(k[1])) == c);
  CHECK(counts.c2.size() == oracle.c2.size());
  for (const auto& [k, c] : oracle.c3)
    CHECK(counts.count3(vocab.lookup(k[0]), vocab.lookup(k[1]),
                        vocab.lookup(k[2])) == c);
  CHECK(counts.c3.size() == oracle.c3.size());
}

}  // namespace

TEST_CASE("fixture corpus counts") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  CHECK(query1(vocab, counts, "the") == 3);
  CHECK(query2(vocab, counts, "the", "cat") == 2);
  CHECK(query3(vocab, counts, "sat", "on", "the") == 1);
  CHECK(query3(vocab, counts, "sat", "on", "a") == 1);
  CHECK(vocab.total_tokens() == 14);
  CHECK(query1(vocab, counts, "zebra") == 0);  // lookup falls to UNK, count 0
}

TEST_CASE("single-token sentence gets full sentinel coverage") {
  auto [vocab, counts] = build_counts(memory_corpus({"a"}), 1);
  const TokenId a = vocab.lookup("a");
  CHECK(counts.count3(kBos, kBos, a) == 1);
  CHECK(counts.count3(kBos, a, kEos) == 1);
  CHECK(counts.count2(a, kEos) == 1);
}

TEST_CASE("min_count folds rare words into UNK before recounting") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 2);
  CHECK(vocab.lookup("a") == kUnk);
  CHECK(vocab.lookup(".") != kUnk);  // "." occurs twice, survives
  CHECK(counts.count2(vocab.lookup("on"), kUnk) == 1);
  check_against_oracle(kFixtureCorpus, 2);
}

TEST_CASE("count() enforces order 1..3") {
  auto [vocab, counts] = build_counts(memory_corpus(kFixtureCorpus), 1);
  const TokenId the = vocab.lookup("the");
  std::vector<TokenId> one{the}, four{the, the, the, the}, zero;
  CHECK(counts.count(one) == 3);
  CHECK_THROWS_AS(counts.count(four), ContractError);
  CHECK_THROWS_AS(counts.count(zero), ContractError);
}

TEST_CASE("empty corpus is rejected") {
  CHECK_THROWS_AS(build_counts(memory_corpus({}), 1), DataError);
  CHECK_THROWS_AS(build_counts(memory_corpus({"", "   "}), 1), DataError);
}

TEST_CASE("random corpora match the naive rescan oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 12; ++trial) {
    auto lines = random_corpus(rng, 2000);
    check_against_oracle(lines, 1);
    check_against_oracle(lines, 2);
  }
}

TEST_CASE("marginal consistency of bigram and trigram tables") {
  std::mt19937_64 rng(9);
  auto lines = random_corpus(rng, 3000);
  auto [vocab, counts] = build_counts(memory_corpus(lines), 1);
  std::unordered_map<std::uint64_t, Count> tri_marginal;
  for (const auto& [k, c] : counts.c3) tri_marginal[pair_key(k.a, k.b)] += c;
  for (const auto& [k, c] : tri_marginal) CHECK(c <= counts.c2.at(k));
  std::unordered_map<TokenId, Count> bi_marginal;
  for (const auto& [k, c] : counts.c2) bi_marginal[pair_first(k)] += c;
  for (const auto& [w, c] : bi_marginal) CHECK(c <= counts.count1(w));
}

TEST_CASE("rebuilding serializes byte-identically") {
  std::mt19937_64 rng(13);
  auto lines = random_corpus(rng, 2000);
  auto serialize = [&] {
    auto trained = train_tables(memory_corpus(lines), 2, 1, true);
    ModelArtifact m;
    m.vocab = std::move(trained.vocab);
    m.counts = std::move(trained.counts);
    m.gaps = std::move(trained.gaps);
    m.lexicon = build_static_lexicon(m.vocab, 10);
    std::ostringstream out;
    save_model(m, out);
    return out.str();
  };
  CHECK(serialize() == serialize());
}
