#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/types.hpp"

namespace gapfill {

// Splits a line on whitespace (space, tab, CR, LF). Empty or
// all-whitespace lines yield an empty vector. No case folding, no
// punctuation handling; the corpus format is already tokenized.
std::vector<std::string> tokenize_line(std::string_view line);

// [BOS, BOS, w_1..w_m, EOS]; two begin sentinels so every real token has
// a full trigram context. Throws DataError on an empty sentence.
std::vector<TokenId> with_boundaries(const std::vector<TokenId>& sentence);

// True iff the byte string is well-formed UTF-8.
bool utf8_valid(std::string_view s);

// Decodes UTF-8 into codepoints. Call only on validated input.
std::vector<char32_t> utf8_codepoints(std::string_view s);

struct LineStats {
  std::uint64_t lines = 0;
  std::uint64_t skipped_invalid_utf8 = 0;
  std::uint64_t skipped_blank = 0;
};

// Streams a UTF-8 text file line by line; invalid-UTF-8 and blank lines
// are skipped and counted. Throws DataError if the file cannot be opened.
LineStats for_each_token_line(
    const std::string& path,
    const std::function<void(const std::vector<std::string>&)>& visit);

// A corpus that can be streamed any number of times.
using SentenceVisitor = std::function<void(const std::vector<std::string>&)>;
using CorpusSource = std::function<void(const SentenceVisitor&)>;

// Corpus source over in-memory lines (tests, fixtures).
CorpusSource memory_corpus(std::vector<std::string> lines);

// Corpus source that re-streams a file on every pass.
CorpusSource file_corpus(std::string path);

}  // namespace gapfill
