#include "gapfill/model_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gapfill {

namespace {

constexpr std::uint32_t kSectionVocab = 1;
constexpr std::uint32_t kSectionCounts = 2;
constexpr std::uint32_t kSectionGaps = 3;
constexpr std::uint32_t kSectionLexicon = 4;
constexpr std::uint32_t kSectionConfig = 5;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& buf, double v) {
  put_u64(buf, std::bit_cast<std::uint64_t>(v));
}
void put_string(std::string& buf, const std::string& s) {
  put_u32(buf, static_cast<std::uint32_t>(s.size()));
  buf += s;
}

struct Reader {
  const char* p;
  const char* end;
  void need(std::size_t n) const {
    if (static_cast<std::size_t>(end - p) < n)
      throw ModelFormatError("truncated model section");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    p += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    p += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(p, n);
    p += n;
    return s;
  }
};

template <typename Map>
std::vector<std::uint64_t> sorted_keys(const Map& m) {
  std::vector<std::uint64_t> keys;
  keys.reserve(m.size());
  for (const auto& [k, v] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string encode_vocab(const Vocabulary& vocab) {
  std::string buf;
  put_u64(buf, vocab.size());
  for (TokenId id = 0; id < vocab.size(); ++id) {
    put_string(buf, vocab.surface(id));
    put_u64(buf, vocab.unigram_count(id));
  }
  put_u64(buf, vocab.total_tokens());
  return buf;
}

void decode_vocab(Reader& r, Vocabulary& vocab) {
  const std::uint64_t n = r.u64();
  if (n < kFirstWordId) throw ModelFormatError("vocabulary too small");
  for (TokenId id = 0; id < n; ++id) {
    const std::string surface = r.str();
    Count c = r.u64();
    if (id >= kFirstWordId) {
      if (vocab.intern(surface) != id)
        throw ModelFormatError("vocabulary ids not dense");
    } else if (surface != vocab.surface(id)) {
      throw ModelFormatError("sentinel surface mismatch");
    }
    if (c > 0) vocab.add_count(id, c);
  }
  vocab.set_total_tokens(r.u64());
}

std::string encode_counts(const NGramCounts& counts) {
  std::string buf;
  put_u64(buf, counts.c1.size());
  for (Count c : counts.c1) put_u64(buf, c);
  put_u64(buf, counts.c2.size());
  for (std::uint64_t k : sorted_keys(counts.c2)) {
    put_u64(buf, k);
    put_u64(buf, counts.c2.at(k));
  }
  std::vector<TriKey> keys;
  keys.reserve(counts.c3.size());
  for (const auto& [k, v] : counts.c3) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  put_u64(buf, keys.size());
  for (const TriKey& k : keys) {
    put_u32(buf, k.a);
    put_u32(buf, k.b);
    put_u32(buf, k.c);
    put_u64(buf, counts.c3.at(k));
  }
  for (int order = 1; order <= 3; ++order)
    for (int r = 1; r <= kMaxCountOfCounts; ++r)
      put_u64(buf, counts.counts_of_counts[order][r]);
  return buf;
}

void decode_counts(Reader& r, NGramCounts& counts) {
  counts.c1.resize(r.u64());
  for (Count& c : counts.c1) c = r.u64();
  const std::uint64_t n2 = r.u64();
  counts.c2.reserve(n2);
  for (std::uint64_t i = 0; i < n2; ++i) {
    const std::uint64_t k = r.u64();
    counts.c2.emplace(k, r.u64());
  }
  const std::uint64_t n3 = r.u64();
  counts.c3.reserve(n3);
  for (std::uint64_t i = 0; i < n3; ++i) {
    TriKey k{r.u32(), r.u32(), r.u32()};
    counts.c3.emplace(k, r.u64());
  }
  for (int order = 1; order <= 3; ++order)
    for (int rr = 1; rr <= kMaxCountOfCounts; ++rr)
      counts.counts_of_counts[order][rr] = r.u64();
}

std::string encode_gaps(const GapTables& gaps) {
  std::string buf;
  buf.push_back(gaps.filtered ? 1 : 0);
  for (const auto* table : {&gaps.together, &gaps.separate}) {
    put_u64(buf, table->size());
    for (std::uint64_t k : sorted_keys(*table)) {
      put_u64(buf, k);
      put_u64(buf, table->at(k));
    }
  }
  put_u64(buf, gaps.middles.size());
  for (std::uint64_t k : sorted_keys(gaps.middles)) {
    const auto& inner = gaps.middles.at(k);
    put_u64(buf, k);
    put_u64(buf, inner.size());
    std::vector<TokenId> words;
    words.reserve(inner.size());
    for (const auto& [w, c] : inner) words.push_back(w);
    std::sort(words.begin(), words.end());
    for (TokenId w : words) {
      put_u32(buf, w);
      put_u64(buf, inner.at(w));
    }
  }
  return buf;
}

void decode_gaps(Reader& r, GapTables& gaps) {
  r.need(1);
  gaps.filtered = *r.p++ != 0;
  for (auto* table : {&gaps.together, &gaps.separate}) {
    const std::uint64_t n = r.u64();
    table->reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t k = r.u64();
      table->emplace(k, r.u64());
    }
  }
  const std::uint64_t n = r.u64();
  gaps.middles.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t k = r.u64();
    const std::uint64_t m = r.u64();
    auto& inner = gaps.middles[k];
    inner.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
      const TokenId w = r.u32();
      inner.emplace(w, r.u64());
    }
  }
}

std::string encode_lexicon(const StaticLexicon& lex) {
  std::string buf;
  put_u32(buf, lex.k);
  put_u64(buf, lex.entries.size());
  for (TokenId id : lex.entries) put_u32(buf, id);
  return buf;
}

void decode_lexicon(Reader& r, StaticLexicon& lex) {
  lex.k = r.u32();
  lex.entries.resize(r.u64());
  for (TokenId& id : lex.entries) id = r.u32();
}

std::string encode_config(const ModelConfig& cfg) {
  std::string buf;
  put_u64(buf, cfg.min_count);
  put_u64(buf, cfg.gap_min_count);
  put_u32(buf, cfg.discount_threshold);
  put_u32(buf, cfg.static_k);
  put_u32(buf, cfg.dynamic_cap);
  put_f64(buf, cfg.default_hyper_v);
  return buf;
}

void decode_config(Reader& r, ModelConfig& cfg) {
  cfg.min_count = r.u64();
  cfg.gap_min_count = r.u64();
  cfg.discount_threshold = r.u32();
  cfg.static_k = r.u32();
  cfg.dynamic_cap = r.u32();
  cfg.default_hyper_v = r.f64();
}

void write_section(std::ostream& out, std::uint32_t id,
                   const std::string& payload) {
  std::string head;
  put_u32(head, id);
  put_u64(head, payload.size());
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

void save_model(const ModelArtifact& model, std::ostream& out) {
  out.write(kModelMagic, sizeof(kModelMagic));
  std::string version;
  put_u32(version, kModelVersion);
  out.write(version.data(), 4);
  write_section(out, kSectionVocab, encode_vocab(model.vocab));
  write_section(out, kSectionCounts, encode_counts(model.counts));
  write_section(out, kSectionGaps, encode_gaps(model.gaps));
  write_section(out, kSectionLexicon, encode_lexicon(model.lexicon));
  write_section(out, kSectionConfig, encode_config(model.config));
  if (!out) throw DataError("model write failed");
}

void save_model(const ModelArtifact& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  save_model(model, out);
}

ModelArtifact load_model(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kModelMagic, 8) != 0)
    throw ModelFormatError("not a model file (bad magic)");
  char vbuf[4];
  in.read(vbuf, 4);
  if (in.gcount() != 4) throw ModelFormatError("truncated model header");
  std::uint32_t version = 0;
  for (int i = 0; i < 4; ++i)
    version |= static_cast<std::uint32_t>(static_cast<unsigned char>(vbuf[i]))
               << (8 * i);
  if (version != kModelVersion)
    throw ModelFormatError("unsupported model version " +
                           std::to_string(version));

  ModelArtifact model;
  std::string head(12, '\0');
  while (in.read(head.data(), 12)) {
    Reader hr{head.data(), head.data() + 12};
    const std::uint32_t id = hr.u32();
    const std::uint64_t len = hr.u64();
    std::string payload(len, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(len));
    if (static_cast<std::uint64_t>(in.gcount()) != len)
      throw ModelFormatError("truncated model section");
    Reader r{payload.data(), payload.data() + payload.size()};
    switch (id) {
      case kSectionVocab:
        decode_vocab(r, model.vocab);
        break;
      case kSectionCounts:
        decode_counts(r, model.counts);
        break;
      case kSectionGaps:
        decode_gaps(r, model.gaps);
        break;
      case kSectionLexicon:
        decode_lexicon(r, model.lexicon);
        break;
      case kSectionConfig:
        decode_config(r, model.config);
        break;
      default:
        break;  // unknown section: skip
    }
  }
  if (model.vocab.size() < kFirstWordId || model.counts.c1.empty())
    throw ModelFormatError("model file missing required sections");
  return model;
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return load_model(in);
}

}  // namespace gapfill
