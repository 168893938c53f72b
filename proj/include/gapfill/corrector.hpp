#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapfill/candidates.hpp"
#include "gapfill/gap_tables.hpp"
#include "gapfill/katz_lm.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

struct CorrectorConfig {
  double hyper_v = 27.0;
  CandidateMode mode = CandidateMode::kCombined;
  std::uint32_t static_k = 100;
  std::uint32_t dynamic_cap = 50;
  bool force_insert = false;
};

struct Correction {
  // Gap index is 1-based: the word was inserted between tokens position
  // and position+1. Both fields present or both absent.
  std::optional<std::size_t> position;
  std::optional<TokenId> word;
  double score = 0.0;  // insertion log-prob delta
  double ratio = 0.0;  // separation ratio at the chosen gap

  bool inserted() const { return position.has_value(); }
};

// Interior gaps whose separation ratio strictly exceeds hyper_v, sorted
// ratio descending (+infinity first), ties by smaller gap index.
std::vector<std::pair<std::size_t, double>> detect_positions(
    std::span<const TokenId> sentence, const GapTables& tables,
    double hyper_v);

struct CorrectResult {
  std::vector<TokenId> tokens;
  Correction correction;
};

// Scores every candidate at every passing gap and inserts the single best
// word, or returns the sentence unchanged when no gap passes the
// threshold (unless force_insert picks the top positive-ratio gap).
CorrectResult correct_sentence(std::span<const TokenId> sentence,
                               const KatzModel& model, const GapTables& tables,
                               const StaticLexicon& lexicon,
                               const CorrectorConfig& cfg);

struct BatchItem {
  std::vector<TokenId> tokens;
  Correction correction;
  std::optional<std::string> error;
};

// Chunked parallel map of correct_sentence; results come back in input
// order and are bit-identical for any worker count or chunk size.
// Per-sentence failures become error records, never batch aborts.
std::vector<BatchItem> correct_batch(
    const std::vector<std::vector<TokenId>>& sentences, const KatzModel& model,
    const GapTables& tables, const StaticLexicon& lexicon,
    const CorrectorConfig& cfg, unsigned threads, std::size_t chunk_size);

}  // namespace gapfill
