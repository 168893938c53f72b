#include "gapfill/tokenizer.hpp"

#include <fstream>

namespace gapfill {

namespace {
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}
}  // namespace

std::vector<std::string> tokenize_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < n && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<TokenId> with_boundaries(const std::vector<TokenId>& sentence) {
  if (sentence.empty()) throw DataError("empty sentence");
  std::vector<TokenId> out;
  out.reserve(sentence.size() + 3);
  out.push_back(kBos);
  out.push_back(kBos);
  out.insert(out.end(), sentence.begin(), sentence.end());
  out.push_back(kEos);
  return out;
}

bool utf8_valid(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t j = 1; j < len; ++j) {
      unsigned char cc = static_cast<unsigned char>(s[i + j]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Reject overlongs, surrogates, and out-of-range codepoints.
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp >= 0xd800 && cp <= 0xdfff) return false;
    if (cp > 0x10ffff) return false;
    i += len;
  }
  return true;
}

std::vector<char32_t> utf8_codepoints(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = c;
    if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    }
    for (std::size_t j = 1; j < len && i + j < s.size(); ++j)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + j]) & 0x3f);
    out.push_back(cp);
    i += len;
  }
  return out;
}

LineStats for_each_token_line(
    const std::string& path,
    const std::function<void(const std::vector<std::string>&)>& visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  LineStats stats;
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (!utf8_valid(line)) {
      ++stats.skipped_invalid_utf8;
      continue;
    }
    auto tokens = tokenize_line(line);
    if (tokens.empty()) {
      ++stats.skipped_blank;
      continue;
    }
    visit(tokens);
  }
  return stats;
}

CorpusSource memory_corpus(std::vector<std::string> lines) {
  return [lines = std::move(lines)](const SentenceVisitor& visit) {
    for (const auto& line : lines) {
      if (!utf8_valid(line)) continue;
      auto tokens = tokenize_line(line);
      if (!tokens.empty()) visit(tokens);
    }
  };
}

CorpusSource file_corpus(std::string path) {
  return [path = std::move(path)](const SentenceVisitor& visit) {
    for_each_token_line(path, visit);
  };
}

}  // namespace gapfill
