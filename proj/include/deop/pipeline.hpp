#ifndef DEOP_PIPELINE_HPP
#define DEOP_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deop/context.hpp"
#include "deop/corpus.hpp"
#include "deop/evaluator.hpp"
#include "deop/lexicon.hpp"
#include "deop/scorer.hpp"

namespace deop {

struct PipelineConfig {
    std::string corpus;
    std::string lexicon_path;    // empty = bundled default
    std::string blocklist_path;  // empty = bundled default
    TokenizerMode mode = TokenizerMode::kPretokenized;
    std::uint64_t min_corpus = 150;
    std::uint64_t min_ctx = 10;
    std::string out_dir;
    RankKey key = RankKey::kDistilled;
    std::size_t top_k = 150;                       // ranked-list truncation
    std::vector<std::size_t> ks;                   // precision cutoffs; empty = 10..150
    std::vector<std::size_t> seed_cutoffs = {150, 300};
    std::string gold_path;
    std::string seeds_path;
    unsigned shards = 1;
    bool winner_takes_all = false;
    bool dedup_spans = true;

    void validate() const;  // throws ConfigError
};

// Everything one pass over the corpus produces. `contexts` holds all
// extracted contexts (retained or not) in canonical (sentence, start,
// end) order.
struct IngestResult {
    CorpusStats stats;
    std::vector<NpiContext> contexts;
    std::uint64_t contexts_total = 0;
    std::uint64_t contexts_retained = 0;
};

NpiLexicon load_lexicon(const PipelineConfig& config);

// Sharded, deterministic ingestion: tokenize, match NPIs, extract
// contexts. Output is bit-identical for any shard count.
IngestResult ingest_corpus(const PipelineConfig& config, const NpiLexicon& lexicon);

struct ScoreResult {
    CountTable counts;
    std::vector<std::string> candidates;
    ScoreTable scores;  // s, s_d and N(c) filled in
};

// Counting, thresholding, Eq-style scoring and distillation over the
// retained contexts of `ingest`.
ScoreResult score_corpus(const PipelineConfig& config, const IngestResult& ingest);

// ---- artifact renderers (deterministic byte-for-byte) ----

std::string stats_json(const IngestResult& ingest);
std::string context_dump_tsv(const IngestResult& ingest, const NpiLexicon& lexicon);
std::string score_dump_tsv(const ScoreTable& scores, RankKey key);
std::string ranked_list_text(const ScoreTable& scores, RankKey key, std::size_t k);
std::string rank_shift_tsv(const std::vector<RankShift>& shifts);

// Parses a score_dump_tsv back; lets `rank`/`eval` re-run from files.
ScoreTable parse_score_dump(std::string_view text);

std::string read_file(const std::string& path);           // throws IoError
void write_file(const std::string& path, std::string_view content);

// ---- subcommand drivers; each returns the list of files written ----

std::vector<std::string> run_stats(const PipelineConfig& config);
std::vector<std::string> run_contexts(const PipelineConfig& config);
std::vector<std::string> run_score(const PipelineConfig& config);
std::vector<std::string> run_rank(const PipelineConfig& config,
                                  const std::string& scores_file = {});
std::vector<std::string> run_eval(const PipelineConfig& config,
                                  const std::string& scores_distilled_file = {},
                                  const std::string& scores_undistilled_file = {});
std::vector<std::string> run_all(const PipelineConfig& config);

}  // namespace deop

#endif  // DEOP_PIPELINE_HPP
