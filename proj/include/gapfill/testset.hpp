#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gapfill/eval.hpp"
#include "gapfill/tokenizer.hpp"

namespace gapfill {

// Uniform draw from [lo, hi] by rejection, so results do not depend on
// the standard library's distribution implementation.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t lo,
                            std::uint64_t hi);

struct Testset {
  std::vector<std::string> damaged;   // sentence with one word removed
  std::vector<std::string> gold;      // original sentence
  std::vector<GoldEdit> annotations;  // gap index + removed word
  std::uint64_t skipped_short = 0;    // sentences with fewer than 3 tokens
};

// Removes one word per usable sentence, drawn uniformly from the interior
// positions {2..m-1} (never the first token, never the last).
Testset make_testset(const CorpusSource& corpus, std::uint64_t seed);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace gapfill
