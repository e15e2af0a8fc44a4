#ifndef DEOP_SCORER_HPP
#define DEOP_SCORER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deop/context.hpp"
#include "deop/corpus.hpp"

namespace deop {

// Count sides of the two relative frequencies:
//   F(c)    = corpus_count(c) / corpus_tokens        (whole corpus)
//   F^_N(c) = ctx_count(c) / ctx_tokens              (retained NPI contexts,
//                                                     one count per context)
struct CountTable {
    StringMap<std::uint64_t> corpus_count;
    std::uint64_t corpus_tokens = 0;
    StringMap<std::uint64_t> ctx_count;   // contexts whose candidate set has c
    std::uint64_t ctx_tokens = 0;         // token positions across retained spans
    std::uint64_t retained_contexts = 0;

    std::uint64_t corpus_count_of(std::string_view token) const;
    std::uint64_t ctx_count_of(std::string_view token) const;
};

// `contexts` must contain retained contexts only.
CountTable accumulate_counts(const CorpusStats& stats,
                             std::span<const NpiContext> contexts);

// Sparse-data filter: keep c iff corpus_count(c) > min_corpus and
// ctx_count(c) > min_ctx (both strict). Returns a sorted vector.
std::vector<std::string> select_candidates(const CountTable& table,
                                           std::uint64_t min_corpus = 150,
                                           std::uint64_t min_ctx = 10);

struct ScoreEntry {
    std::string token;
    double s = 0.0;            // undistilled score F^_N / F
    double s_d = 0.0;          // distilled score, in [0, 1]
    std::uint64_t corpus_count = 0;
    std::uint64_t ctx_count = 0;  // N(c): retained contexts containing c
};

// Entries sorted by token; lookup by binary search.
class ScoreTable {
public:
    ScoreTable() = default;
    explicit ScoreTable(std::vector<ScoreEntry> entries);

    const std::vector<ScoreEntry>& entries() const { return entries_; }
    const ScoreEntry* find(std::string_view token) const;
    bool contains(std::string_view token) const { return find(token) != nullptr; }
    double s_of(std::string_view token) const;

private:
    friend ScoreTable distill(ScoreTable, std::span<const NpiContext>, bool);
    std::vector<ScoreEntry> entries_;
};

// Eq-1-style ratio scores for the given candidates. Throws
// EmptyResultError when there are no retained NPI context tokens.
ScoreTable undistilled_scores(const CountTable& table,
                              const std::vector<std::string>& candidates);

// Re-scores by letting every retained context distribute a unit budget
// among its candidates proportionally to their s scores, then averaging
// each candidate's share over the N(c) contexts containing it. With
// winner_takes_all the whole budget goes to the top-s candidate instead
// (kept for comparison experiments; too aggressive for production use).
// Contexts whose candidate set is empty after restriction to the scored
// candidates contribute nothing.
ScoreTable distill(ScoreTable scores, std::span<const NpiContext> contexts,
                   bool winner_takes_all = false);

enum class RankKey { kDistilled, kUndistilled };

// Descending by key; ties broken by ctx_count descending, then token
// ascending. Truncated to k entries.
std::vector<ScoreEntry> rank(const ScoreTable& scores, RankKey key, std::size_t k);

}  // namespace deop

#endif  // DEOP_SCORER_HPP
