#pragma once

// Brute-force oracles and random-input generators shared by the test
// suites. Everything here recomputes results naively and independently of
// the library's data structures.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "gapfill/ngram_store.hpp"
#include "gapfill/tokenizer.hpp"
#include "gapfill/types.hpp"

namespace gapfill::testing {

inline const std::vector<std::string> kFixtureCorpus = {
    "the cat sat on the mat .",
    "the cat sat on a mat .",
};

struct OracleCounts {
  std::map<std::string, Count> c1;
  std::map<std::vector<std::string>, Count> c2, c3;
  Count total_tokens = 0;
};

// Naive rescan n-gram counter over surface strings, with the same UNK
// folding rule as the library (raw frequency < min_count -> "<unk>").
inline OracleCounts oracle_counts(const std::vector<std::string>& lines,
                                  Count min_count = 1) {
  OracleCounts o;
  std::map<std::string, Count> raw;
  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : lines) {
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    for (const auto& t : toks) ++raw[t];
    sentences.push_back(std::move(toks));
  }
  for (auto& s : sentences) {
    o.total_tokens += s.size();
    std::vector<std::string> aug = {kBosSurface, kBosSurface};
    for (auto& t : s) aug.push_back(raw[t] < min_count ? kUnkSurface : t);
    aug.push_back(kEosSurface);
    for (const auto& t : aug) ++o.c1[t];
    for (std::size_t i = 0; i + 1 < aug.size(); ++i)
      ++o.c2[{aug[i], aug[i + 1]}];
    for (std::size_t i = 0; i + 2 < aug.size(); ++i)
      ++o.c3[{aug[i], aug[i + 1], aug[i + 2]}];
  }
  return o;
}

struct OracleGaps {
  std::map<std::vector<std::string>, Count> together, separate;
  std::map<std::vector<std::string>, Count> middles;  // {a, b, middle}
};

inline OracleGaps oracle_gaps(const std::vector<std::string>& lines,
                              Count min_count = 1) {
  OracleGaps o;
  std::map<std::string, Count> raw;
  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : lines) {
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    for (const auto& t : toks) ++raw[t];
    sentences.push_back(std::move(toks));
  }
  for (auto& s : sentences) {
    for (auto& t : s)
      if (raw[t] < min_count) t = kUnkSurface;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) ++o.together[{s[i], s[i + 1]}];
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
      ++o.separate[{s[i], s[i + 2]}];
      ++o.middles[{s[i], s[i + 2], s[i + 1]}];
    }
  }
  return o;
}

// Full-matrix textbook edit distance (no row reuse), the eval oracle.
inline std::size_t oracle_levenshtein(const std::string& a,
                                      const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  return d[n][m];
}

// Small random corpora over a word vocabulary "w0".."w{V-1}".
inline std::vector<std::string> random_corpus(std::mt19937_64& rng,
                                              std::size_t max_tokens) {
  std::uniform_int_distribution<std::size_t> vocab_size(3, 40);
  const std::size_t v = vocab_size(rng);
  std::uniform_int_distribution<std::size_t> word(0, v - 1);
  std::uniform_int_distribution<std::size_t> sent_len(1, 12);
  std::vector<std::string> lines;
  std::size_t tokens = 0;
  while (tokens < max_tokens) {
    const std::size_t len = sent_len(rng);
    std::string line;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) line.push_back(' ');
      line += "w" + std::to_string(word(rng));
    }
    tokens += len;
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace gapfill::testing
