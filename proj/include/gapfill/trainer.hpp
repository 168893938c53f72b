#pragma once

#include "gapfill/gap_tables.hpp"
#include "gapfill/ngram_store.hpp"

namespace gapfill {

struct TrainedTables {
  Vocabulary vocab;
  NGramCounts counts;
  GapTables gaps;
  BuildStats stats;
};

// Single-stream training pass: vocabulary, n-gram counts, and (optionally)
// gap tables are all accumulated in one scan, then rare tokens are folded
// into UNK across every table.
TrainedTables train_tables(const CorpusSource& corpus, Count min_count,
                           Count gap_min_count, bool build_gaps);

}  // namespace gapfill
