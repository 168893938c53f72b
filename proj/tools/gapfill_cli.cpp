#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gapfill/candidates.hpp"
#include "gapfill/corrector.hpp"
#include "gapfill/eval.hpp"
#include "gapfill/katz_lm.hpp"
#include "gapfill/model_io.hpp"
#include "gapfill/testset.hpp"
#include "gapfill/tokenizer.hpp"
#include "gapfill/trainer.hpp"

namespace {

using namespace gapfill;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModelFormat = 3;

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw DataError("write failed: " + path);
}

int cmd_train(const std::string& corpus_path, const std::string& out_path,
              Count min_count, std::uint32_t static_k, Count gap_min_count,
              const std::string& test_filter_path) {
  ModelArtifact model;
  BuildStats stats;
  auto corpus = file_corpus(corpus_path);
  if (test_filter_path.empty()) {
    auto trained = train_tables(corpus, min_count, gap_min_count,
                                /*build_gaps=*/true);
    stats = trained.stats;
    model.vocab = std::move(trained.vocab);
    model.counts = std::move(trained.counts);
    model.gaps = std::move(trained.gaps);
  } else {
    // Filtered mode: counts first, then a second corpus pass restricted
    // to the bigrams of the test set.
    auto built = build_counts(corpus, min_count, &stats);
    model.vocab = std::move(built.first);
    model.counts = std::move(built.second);
    auto filter =
        filter_from_sentences(file_corpus(test_filter_path), model.vocab);
    model.gaps = build_gap_tables(corpus, model.vocab, &filter, gap_min_count);
  }
  model.lexicon = build_static_lexicon(model.vocab, static_k);
  model.config.min_count = min_count;
  model.config.gap_min_count = gap_min_count;
  model.config.static_k = static_k;
  save_model(model, out_path);
  std::cout << "sentences: " << stats.sentences << "\n"
            << "tokens: " << stats.tokens << "\n"
            << "vocabulary: " << model.vocab.size() << "\n"
            << "bigrams: " << model.counts.c2.size() << "\n"
            << "trigrams: " << model.counts.c3.size() << "\n"
            << "model: " << out_path << "\n";
  return kExitOk;
}

int cmd_correct(const std::string& model_path, const std::string& in_path,
                const std::string& out_path, const CorrectorConfig& cfg,
                unsigned threads, std::size_t chunk_size) {
  const ModelArtifact model = load_model(model_path);
  const KatzModel lm(model.vocab, model.counts, model.config.discount_threshold);
  for (int order = 1; order <= 3; ++order)
    if (lm.degenerate_discounts(order))
      std::cerr << "warning: degenerate counts-of-counts at order " << order
                << "; some counts are undiscounted\n";

  StaticLexicon lexicon = model.lexicon;
  if (cfg.static_k != model.config.static_k)
    lexicon = build_static_lexicon(model.vocab, cfg.static_k);

  const std::vector<std::string> lines = read_lines(in_path);
  std::vector<std::vector<TokenId>> id_sentences(lines.size());
  std::vector<std::vector<std::string>> surfaces(lines.size());
  std::uint64_t malformed = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!utf8_valid(lines[i])) {
      ++malformed;
      continue;  // passed through unchanged below
    }
    surfaces[i] = tokenize_line(lines[i]);
    id_sentences[i].reserve(surfaces[i].size());
    for (const auto& tok : surfaces[i])
      id_sentences[i].push_back(model.vocab.lookup(tok));
  }

  const auto start = std::chrono::steady_clock::now();
  const auto results = correct_batch(id_sentences, lm, model.gaps, lexicon,
                                     cfg, threads, chunk_size);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  std::vector<std::string> out_lines(lines.size());
  std::uint64_t insertions = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (surfaces[i].empty()) {
      out_lines[i] = lines[i];  // blank or malformed: untouched
      continue;
    }
    const auto& r = results[i];
    if (r.error || !r.correction.inserted()) {
      out_lines[i] = join_tokens(surfaces[i]);
      continue;
    }
    ++insertions;
    std::vector<std::string> corrected = surfaces[i];
    corrected.insert(corrected.begin() +
                         static_cast<std::ptrdiff_t>(*r.correction.position),
                     model.vocab.surface(*r.correction.word));
    out_lines[i] = join_tokens(corrected);
  }
  write_lines(out_path, out_lines);

  const double n = static_cast<double>(lines.size());
  std::cout << "sentences: " << lines.size() << "\n"
            << "insertions: " << insertions << "\n"
            << "malformed lines passed through: " << malformed << "\n"
            << "threads: " << threads << ", chunk size: " << chunk_size << "\n"
            << "wall time: " << elapsed << " s\n"
            << "throughput: " << (elapsed > 0 ? n / elapsed : 0.0)
            << " sentences/s\n"
            << "per 1000 sentences: "
            << (n > 0 ? elapsed * 1000.0 / n : 0.0) << " s\n";
  return kExitOk;
}

int cmd_make_testset(const std::string& in_path, const std::string& test_out,
                     const std::string& gold_out,
                     const std::string& annotation_out, std::uint64_t seed) {
  const Testset set = make_testset(file_corpus(in_path), seed);
  write_lines(test_out, set.damaged);
  write_lines(gold_out, set.gold);
  std::vector<std::string> ann_lines;
  ann_lines.reserve(set.annotations.size());
  for (const auto& a : set.annotations)
    ann_lines.push_back(std::to_string(a.gap_index) + "\t" + a.removed_word);
  write_lines(annotation_out, ann_lines);
  std::cout << "sentences: " << set.damaged.size() << "\n"
            << "skipped (fewer than 3 tokens): " << set.skipped_short << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& hyp_path, const std::string& ref_path,
             const std::string& ann_path, bool token_level, bool machine) {
  const auto hyp = read_lines(hyp_path);
  const auto ref = read_lines(ref_path);
  std::vector<GoldEdit> annotations;
  const std::vector<GoldEdit>* ann_ptr = nullptr;
  if (!ann_path.empty()) {
    annotations = load_annotations(ann_path);
    ann_ptr = &annotations;
  }
  const EvalReport report = evaluate(hyp, ref, ann_ptr, token_level);
  std::cout << "sentences:          " << report.n_sentences << "\n"
            << "avg_levenshtein:    " << report.avg_levenshtein << "\n"
            << "exact_match_rate:   " << report.exact_match_rate << "\n";
  if (report.avg_token_levenshtein)
    std::cout << "avg_token_distance: " << *report.avg_token_levenshtein
              << "\n";
  if (report.position_accuracy)
    std::cout << "position_accuracy:  " << *report.position_accuracy << "\n"
              << "word_accuracy:      " << *report.word_accuracy << "\n"
              << "no_insert_rate:     " << *report.no_insert_rate << "\n";
  if (machine) {
    std::cout << "RESULT n=" << report.n_sentences
              << " avg_lev=" << report.avg_levenshtein
              << " exact=" << report.exact_match_rate;
    if (report.position_accuracy)
      std::cout << " pos_acc=" << *report.position_accuracy
                << " word_acc=" << *report.word_accuracy
                << " no_insert=" << *report.no_insert_rate;
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Missing-word sentence restoration"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Build a model from a corpus");
  std::string corpus_path, model_out, test_filter;
  Count min_count = 1, gap_min_count = 1;
  std::uint32_t static_k = 100;
  train->add_option("corpus", corpus_path, "Training corpus (one sentence per line)")
      ->required();
  train->add_option("model", model_out, "Output model file")->required();
  train->add_option("--min-count", min_count,
                    "Map tokens rarer than this to UNK")
      ->capture_default_str();
  train->add_option("--static-k", static_k, "Static lexicon size")
      ->capture_default_str();
  train->add_option("--gap-min-count", gap_min_count,
                    "Prune gap middle words rarer than this")
      ->capture_default_str();
  train->add_option("--test-filter", test_filter,
                    "Restrict gap tables to bigrams of this test file");

  // correct
  auto* correct = app.add_subcommand("correct", "Restore missing words");
  std::string model_path, in_path, out_path, mode_name = "combined";
  CorrectorConfig ccfg;
  unsigned threads = 1;
  std::size_t chunk_size = 1000;
  correct->add_option("model", model_path, "Model file")->required();
  correct->add_option("input", in_path, "Input sentences")->required();
  correct->add_option("output", out_path, "Corrected output")->required();
  correct->add_option("--hyper-v", ccfg.hyper_v, "Separation ratio threshold")
      ->capture_default_str();
  correct
      ->add_option("--mode", mode_name,
                   "Candidate mode: static|dynamic|combined")
      ->check(CLI::IsMember({"static", "dynamic", "combined"}))
      ->capture_default_str();
  correct->add_option("--static-k", ccfg.static_k, "Static lexicon size")
      ->capture_default_str();
  correct->add_option("--dynamic-cap", ccfg.dynamic_cap,
                      "Dynamic candidate cap")
      ->capture_default_str();
  correct->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correct->add_option("--chunk-size", chunk_size, "Sentences per task")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correct->add_flag("--force-insert", ccfg.force_insert,
                    "Insert at the best positive-ratio gap even below the threshold");

  // make-testset
  auto* make = app.add_subcommand(
      "make-testset", "Remove one random interior word per sentence");
  std::string mt_in, mt_test, mt_gold, mt_ann;
  std::uint64_t seed = 0;
  make->add_option("input", mt_in, "Source sentences")->required();
  make->add_option("test-out", mt_test, "Damaged sentences")->required();
  make->add_option("gold-out", mt_gold, "Original sentences")->required();
  make->add_option("annotation-out", mt_ann, "Gap index + removed word")
      ->required();
  make->add_option("--seed", seed, "Random seed")->capture_default_str();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score output against gold");
  std::string hyp_path, ref_path, ann_path;
  bool token_level = false, machine = false;
  eval_cmd->add_option("hypotheses", hyp_path, "System output")->required();
  eval_cmd->add_option("references", ref_path, "Gold sentences")->required();
  eval_cmd->add_option("--annotations", ann_path,
                       "Gold edit annotations (gap index + removed word)");
  eval_cmd->add_flag("--token-level", token_level,
                     "Also report token-level distance");
  eval_cmd->add_flag("--machine", machine,
                     "Print a single machine-readable result line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train)
      return cmd_train(corpus_path, model_out, min_count, static_k,
                       gap_min_count, test_filter);
    if (*correct) {
      if (mode_name == "static") ccfg.mode = CandidateMode::kStaticOnly;
      else if (mode_name == "dynamic") ccfg.mode = CandidateMode::kDynamicOnly;
      else ccfg.mode = CandidateMode::kCombined;
      return cmd_correct(model_path, in_path, out_path, ccfg, threads,
                         chunk_size);
    }
    if (*make) return cmd_make_testset(mt_in, mt_test, mt_gold, mt_ann, seed);
    if (*eval_cmd)
      return cmd_eval(hyp_path, ref_path, ann_path, token_level, machine);
  } catch (const ModelFormatError& e) {
    std::cerr << "model format error: " << e.what() << "\n";
    return kExitModelFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
