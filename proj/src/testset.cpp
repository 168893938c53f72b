#include "gapfill/testset.hpp"

namespace gapfill {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t lo,
                            std::uint64_t hi) {
  const std::uint64_t range = hi - lo + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % range;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

Testset make_testset(const CorpusSource& corpus, std::uint64_t seed) {
  Testset set;
  std::mt19937_64 rng(seed);
  corpus([&](const std::vector<std::string>& tokens) {
    const std::size_t m = tokens.size();
    if (m < 3) {
      ++set.skipped_short;
      return;
    }
    // Removal index in {2..m-1}, 1-based: interior words only.
    const std::size_t remove = uniform_index(rng, 2, m - 1);
    std::vector<std::string> damaged = tokens;
    damaged.erase(damaged.begin() + (remove - 1));
    set.damaged.push_back(join_tokens(damaged));
    set.gold.push_back(join_tokens(tokens));
    // The gap the word left behind sits between damaged tokens
    // remove-1 and remove.
    set.annotations.push_back({remove - 1, tokens[remove - 1]});
  });
  return set;
}

}  // namespace gapfill
