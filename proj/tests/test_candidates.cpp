#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "gapfill/candidates.hpp"
#include "gapfill/trainer.hpp"
#include "helpers.hpp"

using namespace gapfill;
using namespace gapfill::testing;

namespace {

TrainedTables fixture() {
  return train_tables(memory_corpus(kFixtureCorpus), 1, 1, true);
}

std::vector<std::string> surfaces(const Vocabulary& vocab,
                                  const std::vector<TokenId>& ids) {
  std::vector<std::string> out;
  for (TokenId id : ids) out.push_back(vocab.surface(id));
  return out;
}

}  // namespace

TEST_CASE("static lexicon ranks by count then surface") {
  auto t = fixture();
  auto lex = build_static_lexicon(t.vocab, 3);
  CHECK(surfaces(t.vocab, lex.entries) ==
        std::vector<std::string>{"the", ".", "cat"});
  CHECK(build_static_lexicon(t.vocab, 1).entries ==
        std::vector<TokenId>{t.vocab.lookup("the")});
  auto all = build_static_lexicon(t.vocab, 1000);
  CHECK(all.entries.size() == t.vocab.size() - kFirstWordId);
  CHECK_THROWS_AS(build_static_lexicon(t.vocab, 0), ContractError);
}

TEST_CASE("dynamic candidates rank by gap count then unigram count") {
  auto t = fixture();
  const TokenId on = t.vocab.lookup("on"), mat = t.vocab.lookup("mat");
  CHECK(surfaces(t.vocab, dynamic_candidates(on, mat, t.gaps, t.vocab, 50)) ==
        std::vector<std::string>{"the", "a"});
  CHECK(surfaces(t.vocab, dynamic_candidates(on, mat, t.gaps, t.vocab, 1)) ==
        std::vector<std::string>{"the"});
  CHECK(dynamic_candidates(999, mat, t.gaps, t.vocab, 50).empty());
}

TEST_CASE("candidate sets union per mode with source tags") {
  auto t = fixture();
  auto lex = build_static_lexicon(t.vocab, 3);
  const TokenId on = t.vocab.lookup("on"), mat = t.vocab.lookup("mat");

  auto combined = candidate_set(on, mat, lex, t.gaps, t.vocab,
                                CandidateMode::kCombined, 50);
  REQUIRE(combined.items.size() == 4);  // {the, a, ., cat}
  for (const auto& item : combined.items) {
    const auto& s = t.vocab.surface(item.id);
    if (s == "the") CHECK(item.source == CandidateSource::kBoth);
    if (s == "a") CHECK(item.source == CandidateSource::kDynamic);
    if (s == "." || s == "cat") CHECK(item.source == CandidateSource::kStatic);
  }

  auto static_only = candidate_set(999, 998, lex, t.gaps, t.vocab,
                                   CandidateMode::kStaticOnly, 50);
  CHECK(static_only.items.size() == lex.entries.size());

  auto dynamic_only = candidate_set(999, 998, lex, t.gaps, t.vocab,
                                    CandidateMode::kDynamicOnly, 50);
  CHECK(dynamic_only.items.empty());
}

TEST_CASE("combined contains both single-source sets; no reserved ids") {
  std::mt19937_64 rng(11);
  auto lines = random_corpus(rng, 3000);
  auto t = train_tables(memory_corpus(lines), 1, 1, true);
  auto lex = build_static_lexicon(t.vocab, 10);
  std::uniform_int_distribution<TokenId> any(0, static_cast<TokenId>(
                                                    t.vocab.size() - 1));
  for (int trial = 0; trial < 200; ++trial) {
    const TokenId a = any(rng), b = any(rng);
    auto comb =
        candidate_set(a, b, lex, t.gaps, t.vocab, CandidateMode::kCombined, 5);
    auto stat = candidate_set(a, b, lex, t.gaps, t.vocab,
                              CandidateMode::kStaticOnly, 5);
    auto dyn = candidate_set(a, b, lex, t.gaps, t.vocab,
                             CandidateMode::kDynamicOnly, 5);
    for (const auto& item : stat.items) CHECK(comb.contains(item.id));
    for (const auto& item : dyn.items) CHECK(comb.contains(item.id));
    for (const auto& item : comb.items) CHECK_FALSE(is_sentinel(item.id));
    // Identical inputs give identical ordered lists.
    auto again =
        candidate_set(a, b, lex, t.gaps, t.vocab, CandidateMode::kCombined, 5);
    REQUIRE(again.items.size() == comb.items.size());
    for (std::size_t i = 0; i < comb.items.size(); ++i)
      CHECK(again.items[i].id == comb.items[i].id);
  }
}
