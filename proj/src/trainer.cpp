#include "gapfill/trainer.hpp"

namespace gapfill {

namespace {

template <typename Map>
Map remap_pairs(const Map& raw, const std::vector<TokenId>& to_new) {
  Map out;
  out.reserve(raw.size());
  for (const auto& [key, c] : raw) {
    std::uint64_t k = pair_key(to_new[pair_first(key)], to_new[pair_second(key)]);
    out[k] += c;
  }
  return out;
}

}  // namespace

TrainedTables train_tables(const CorpusSource& corpus, Count min_count,
                           Count gap_min_count, bool build_gaps) {
  if (min_count < 1) throw ContractError("min_count must be >= 1");
  TrainedTables t;
  Vocabulary& vocab = t.vocab;
  NGramCounts raw;
  GapTables raw_gaps;
  std::vector<Count>& c1 = raw.c1;
  c1.assign(kFirstWordId, 0);
  Count total_tokens = 0;

  corpus([&](const std::vector<std::string>& tokens) {
    ++t.stats.sentences;
    const std::size_t m = tokens.size();
    total_tokens += m;
    std::vector<TokenId> ids(m);
    for (std::size_t i = 0; i < m; ++i) {
      ids[i] = vocab.intern(tokens[i]);
      if (ids[i] >= c1.size()) c1.resize(ids[i] + 1, 0);
      ++c1[ids[i]];
    }
    c1[kBos] += 2;
    c1[kEos] += 1;

    // Boundary-augmented bigrams and trigrams: [BOS, BOS, w_1..w_m, EOS].
    auto at = [&](std::size_t i) -> TokenId {
      if (i < 2) return kBos;
      if (i < m + 2) return ids[i - 2];
      return kEos;
    };
    const std::size_t n = m + 3;
    for (std::size_t i = 0; i + 1 < n; ++i)
      ++raw.c2[pair_key(at(i), at(i + 1))];
    for (std::size_t i = 0; i + 2 < n; ++i)
      ++raw.c3[TriKey{at(i), at(i + 1), at(i + 2)}];

    if (build_gaps) {
      for (std::size_t i = 0; i + 1 < m; ++i)
        ++raw_gaps.together[pair_key(ids[i], ids[i + 1])];
      for (std::size_t i = 0; i + 2 < m; ++i) {
        std::uint64_t key = pair_key(ids[i], ids[i + 2]);
        ++raw_gaps.separate[key];
        ++raw_gaps.middles[key][ids[i + 1]];
      }
    }
  });

  if (t.stats.sentences == 0) throw DataError("no training data");
  t.stats.tokens = total_tokens;

  // Fold tokens rarer than min_count into UNK and rebuild every table.
  bool any_dropped = false;
  if (min_count > 1) {
    for (TokenId id = kFirstWordId; id < c1.size(); ++id)
      if (c1[id] < min_count) {
        any_dropped = true;
        break;
      }
  }
  if (any_dropped) {
    std::vector<TokenId> to_new(c1.size());
    Vocabulary compact;
    std::vector<Count> new_c1(kFirstWordId, 0);
    for (TokenId id = 0; id < c1.size(); ++id) {
      if (id < kFirstWordId) {
        to_new[id] = id;
        new_c1[id] = c1[id];
      } else if (c1[id] >= min_count) {
        TokenId nid = compact.intern(vocab.surface(id));
        to_new[id] = nid;
        if (nid >= new_c1.size()) new_c1.resize(nid + 1, 0);
        new_c1[nid] = c1[id];
      } else {
        to_new[id] = kUnk;
        new_c1[kUnk] += c1[id];
      }
    }
    raw.c1 = std::move(new_c1);
    raw.c2 = remap_pairs(raw.c2, to_new);
    raw.c3 = [&] {
      decltype(raw.c3) out;
      out.reserve(raw.c3.size());
      for (const auto& [k, c] : raw.c3)
        out[TriKey{to_new[k.a], to_new[k.b], to_new[k.c]}] += c;
      return out;
    }();
    if (build_gaps) {
      raw_gaps.together = remap_pairs(raw_gaps.together, to_new);
      raw_gaps.separate = remap_pairs(raw_gaps.separate, to_new);
      decltype(raw_gaps.middles) mids;
      mids.reserve(raw_gaps.middles.size());
      for (const auto& [key, inner] : raw_gaps.middles) {
        auto& dst =
            mids[pair_key(to_new[pair_first(key)], to_new[pair_second(key)])];
        for (const auto& [w, c] : inner) dst[to_new[w]] += c;
      }
      raw_gaps.middles = std::move(mids);
    }
    vocab = std::move(compact);
  }

  for (TokenId id = 0; id < raw.c1.size(); ++id)
    if (raw.c1[id] > 0) vocab.add_count(id, raw.c1[id]);
  vocab.set_total_tokens(total_tokens);

  raw.recompute_counts_of_counts();

  if (build_gaps && gap_min_count > 1) {
    for (auto it = raw_gaps.middles.begin(); it != raw_gaps.middles.end();) {
      auto& inner = it->second;
      for (auto mit = inner.begin(); mit != inner.end();)
        mit = (mit->second < gap_min_count) ? inner.erase(mit) : std::next(mit);
      it = inner.empty() ? raw_gaps.middles.erase(it) : std::next(it);
    }
  }

  t.counts = std::move(raw);
  t.gaps = std::move(raw_gaps);
  return t;
}

}  // namespace gapfill
