#include "gapfill/corrector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gapfill {

std::vector<std::pair<std::size_t, double>> detect_positions(
    std::span<const TokenId> sentence, const GapTables& tables,
    double hyper_v) {
  std::vector<std::pair<std::size_t, double>> out;
  const std::size_t m = sentence.size();
  if (m < 2) return out;
  for (std::size_t i = 1; i <= m - 1; ++i) {
    const double ratio = tables.separation_ratio(sentence[i - 1], sentence[i]);
    if (ratio > hyper_v) out.emplace_back(i, ratio);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // stable keeps smaller index first on ties
  });
  return out;
}

namespace {

struct Best {
  bool found = false;
  std::size_t position = 0;
  TokenId word = kUnk;
  double score = 0.0;
  double ratio = 0.0;
};

void consider(Best& best, const Vocabulary& vocab, std::size_t position,
              double ratio, TokenId word, double score) {
  if (!best.found) {
    best = {true, position, word, score, ratio};
    return;
  }
  if (score != best.score) {
    if (score > best.score) best = {true, position, word, score, ratio};
    return;
  }
  // Exact score tie: higher unigram count, then smaller surface, then
  // smaller position.
  const Count cw = vocab.unigram_count(word);
  const Count cb = vocab.unigram_count(best.word);
  if (cw != cb) {
    if (cw > cb) best = {true, position, word, score, ratio};
    return;
  }
  const auto& sw = vocab.surface(word);
  const auto& sb = vocab.surface(best.word);
  if (sw != sb) {
    if (sw < sb) best = {true, position, word, score, ratio};
    return;
  }
  if (position < best.position) best = {true, position, word, score, ratio};
}

}  // namespace

CorrectResult correct_sentence(std::span<const TokenId> sentence,
                               const KatzModel& model, const GapTables& tables,
                               const StaticLexicon& lexicon,
                               const CorrectorConfig& cfg) {
  if (sentence.empty()) throw DataError("empty sentence");
  CorrectResult result;
  result.tokens.assign(sentence.begin(), sentence.end());

  auto gaps = detect_positions(sentence, tables, cfg.hyper_v);
  if (gaps.empty() && cfg.force_insert) {
    // Fall back to the single highest-ratio gap with any separation
    // evidence at all.
    Best top;
    const std::size_t m = sentence.size();
    for (std::size_t i = 1; i + 1 <= m; ++i) {
      const double ratio =
          tables.separation_ratio(sentence[i - 1], sentence[i]);
      if (ratio > 0.0 && (!top.found || ratio > top.ratio)) {
        top.found = true;
        top.position = i;
        top.ratio = ratio;
      }
    }
    if (top.found) gaps.emplace_back(top.position, top.ratio);
  }

  Best best;
  for (const auto& [position, ratio] : gaps) {
    const TokenId left = sentence[position - 1];
    const TokenId right = sentence[position];
    const auto cands = candidate_set(left, right, lexicon, tables,
                                     model.vocab(), cfg.mode, cfg.dynamic_cap);
    for (const auto& item : cands.items) {
      const double delta = model.insertion_delta(sentence, position, item.id);
      consider(best, model.vocab(), position, ratio, item.id, delta);
    }
  }

  if (best.found) {
    result.tokens.insert(result.tokens.begin() + best.position, best.word);
    result.correction.position = best.position;
    result.correction.word = best.word;
    result.correction.score = best.score;
    result.correction.ratio = best.ratio;
  }
  return result;
}

std::vector<BatchItem> correct_batch(
    const std::vector<std::vector<TokenId>>& sentences, const KatzModel& model,
    const GapTables& tables, const StaticLexicon& lexicon,
    const CorrectorConfig& cfg, unsigned threads, std::size_t chunk_size) {
  if (threads < 1) threads = 1;
  if (chunk_size < 1) chunk_size = 1;
  std::vector<BatchItem> results(sentences.size());
  const std::size_t n_chunks =
      sentences.empty() ? 0 : (sentences.size() + chunk_size - 1) / chunk_size;

  auto run_chunk = [&](std::size_t chunk) {
    const std::size_t begin = chunk * chunk_size;
    const std::size_t end = std::min(begin + chunk_size, sentences.size());
    for (std::size_t i = begin; i < end; ++i) {
      try {
        auto r = correct_sentence(sentences[i], model, tables, lexicon, cfg);
        results[i].tokens = std::move(r.tokens);
        results[i].correction = r.correction;
      } catch (const std::exception& e) {
        results[i].tokens = sentences[i];
        results[i].error = e.what();
      }
    }
  };

  if (threads == 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned n_workers = std::min<std::size_t>(threads, n_chunks);
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < n_chunks;
           c = next.fetch_add(1))
        run_chunk(c);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace gapfill
