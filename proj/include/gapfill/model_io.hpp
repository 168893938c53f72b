#pragma once

#include <iosfwd>
#include <string>

#include "gapfill/candidates.hpp"
#include "gapfill/gap_tables.hpp"
#include "gapfill/ngram_store.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

inline constexpr char kModelMagic[8] = {'G', 'A', 'P', 'F',
                                        'I', 'L', 'L', '1'};
inline constexpr std::uint32_t kModelVersion = 1;

struct ModelConfig {
  Count min_count = 1;
  Count gap_min_count = 1;
  std::uint32_t discount_threshold = 5;
  std::uint32_t static_k = 100;
  std::uint32_t dynamic_cap = 50;
  double default_hyper_v = 27.0;
};

// Everything a correction run needs, loadable from one file. The on-disk
// layout is an 8-byte magic, a little-endian u32 version, then
// length-prefixed sections (unknown trailing sections are skipped).
// All tables are written in sorted key order, so identical models
// serialize to identical bytes.
struct ModelArtifact {
  Vocabulary vocab;
  NGramCounts counts;
  GapTables gaps;
  StaticLexicon lexicon;
  ModelConfig config;
};

void save_model(const ModelArtifact& model, std::ostream& out);
void save_model(const ModelArtifact& model, const std::string& path);

// Throws ModelFormatError on a bad magic or unknown version (checked
// before any table is read), DataError on I/O failure.
ModelArtifact load_model(std::istream& in);
ModelArtifact load_model(const std::string& path);

}  // namespace gapfill
