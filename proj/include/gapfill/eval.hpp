#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/types.hpp"

namespace gapfill {

// Codepoint-level edit distance (insert/delete/substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

struct GoldEdit {
  std::size_t gap_index = 0;  // 1-based gap in the damaged sentence
  std::string removed_word;
};

struct EvalReport {
  std::size_t n_sentences = 0;
  double avg_levenshtein = 0.0;
  double exact_match_rate = 0.0;
  std::optional<double> avg_token_levenshtein;
  // Present only when gold edit annotations are supplied.
  std::optional<double> position_accuracy;
  std::optional<double> word_accuracy;
  std::optional<double> no_insert_rate;
};

// hypotheses and references are whole sentence lines (tokens joined by
// single spaces). Throws DataError on a line-count mismatch.
EvalReport evaluate(const std::vector<std::string>& hypotheses,
                    const std::vector<std::string>& references,
                    const std::vector<GoldEdit>* annotations = nullptr,
                    bool token_level = false);

std::vector<GoldEdit> load_annotations(const std::string& path);

}  // namespace gapfill
