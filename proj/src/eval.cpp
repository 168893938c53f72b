#include "gapfill/eval.hpp"

#include <algorithm>
#include <fstream>

#include "gapfill/tokenizer.hpp"

namespace gapfill {

namespace {

template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return edit_distance(utf8_codepoints(a), utf8_codepoints(b));
}

EvalReport evaluate(const std::vector<std::string>& hypotheses,
                    const std::vector<std::string>& references,
                    const std::vector<GoldEdit>* annotations,
                    bool token_level) {
  if (hypotheses.size() != references.size())
    throw DataError("line count mismatch: " +
                    std::to_string(hypotheses.size()) + " hypotheses vs " +
                    std::to_string(references.size()) + " references");
  if (annotations && annotations->size() != references.size())
    throw DataError("line count mismatch: " +
                    std::to_string(annotations->size()) + " annotations vs " +
                    std::to_string(references.size()) + " references");

  EvalReport report;
  report.n_sentences = hypotheses.size();
  if (hypotheses.empty()) return report;

  std::uint64_t total_dist = 0, total_token_dist = 0, exact = 0;
  std::uint64_t pos_ok = 0, word_ok = 0, no_insert = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total_dist += levenshtein(hypotheses[i], references[i]);
    if (hypotheses[i] == references[i]) ++exact;
    if (token_level)
      total_token_dist += edit_distance(tokenize_line(hypotheses[i]),
                                        tokenize_line(references[i]));
    if (annotations) {
      const GoldEdit& gold = (*annotations)[i];
      auto ref_tokens = tokenize_line(references[i]);
      auto hyp_tokens = tokenize_line(hypotheses[i]);
      // Rebuild the damaged sentence, then read the hypothesis edit off
      // the leftmost divergence.
      std::vector<std::string> damaged = ref_tokens;
      if (gold.gap_index >= 1 && gold.gap_index < damaged.size())
        damaged.erase(damaged.begin() + gold.gap_index);
      if (hyp_tokens == damaged) {
        ++no_insert;
      } else if (hyp_tokens.size() == damaged.size() + 1) {
        std::size_t j = 0;
        while (j < damaged.size() && hyp_tokens[j] == damaged[j]) ++j;
        if (j == gold.gap_index) ++pos_ok;
        if (hyp_tokens[j] == gold.removed_word) ++word_ok;
      }
    }
  }

  const double n = static_cast<double>(report.n_sentences);
  report.avg_levenshtein = static_cast<double>(total_dist) / n;
  report.exact_match_rate = static_cast<double>(exact) / n;
  if (token_level)
    report.avg_token_levenshtein = static_cast<double>(total_token_dist) / n;
  if (annotations) {
    report.position_accuracy = static_cast<double>(pos_ok) / n;
    report.word_accuracy = static_cast<double>(word_ok) / n;
    report.no_insert_rate = static_cast<double>(no_insert) / n;
  }
  return report;
}

std::vector<GoldEdit> load_annotations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<GoldEdit> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("malformed annotation line: " + line);
    GoldEdit edit;
    try {
      edit.gap_index = std::stoull(line.substr(0, tab));
    } catch (const std::exception&) {
      throw DataError("malformed annotation gap index: " + line);
    }
    edit.removed_word = line.substr(tab + 1);
    out.push_back(std::move(edit));
  }
  return out;
}

}  // namespace gapfill
