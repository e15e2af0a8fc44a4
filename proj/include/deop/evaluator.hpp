#ifndef DEOP_EVALUATOR_HPP
#define DEOP_EVALUATOR_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deop/corpus.hpp"
#include "deop/scorer.hpp"

namespace deop {

// Judgment categories. Superlatives, comparatives and conditionals count
// as successes alongside narrowly-defined downward-entailing items; HARD
// is excluded from strict precision and included in lenient.
enum class GoldLabel { kDeNd, kSuperlative, kComparative, kConditional, kHard, kNotDe };

constexpr std::array<std::string_view, 6> kGoldLabelNames = {
    "DE_ND", "SUPERLATIVE", "COMPARATIVE", "CONDITIONAL", "HARD", "NOT_DE"};

std::string_view gold_label_name(GoldLabel label);
std::optional<GoldLabel> parse_gold_label(std::string_view name);

using GoldLabels = StringMap<GoldLabel>;

// Lines of "token<TAB>LABEL"; '#' comments and blank lines skipped.
// Throws ConfigError on unknown labels or malformed lines.
GoldLabels parse_gold_labels(std::string_view text);

// One token per line, '#' comments allowed.
std::vector<std::string> parse_token_list(std::string_view text);

struct PrecisionRow {
    std::size_t k = 0;
    std::array<std::size_t, 6> label_counts{};  // indexed by GoldLabel
    std::size_t unknown = 0;                    // unlabeled, reported separately
    double strict = 0.0;   // (DE_ND + SUP + COMP + COND) / k
    double lenient = 0.0;  // strict plus HARD / k
};

// `ranked` is a prefix-consistent ranking (tokens, best first); each k
// must be <= ranked.size().
std::vector<PrecisionRow> precision_at_k(const std::vector<std::string>& ranked,
                                         const GoldLabels& gold,
                                         const std::vector<std::size_t>& ks);

struct SeedRecallRow {
    std::size_t cutoff = 0;
    std::vector<std::string> present;  // seeds in the top-cutoff
    std::vector<std::string> absent;   // considered seeds further down
    double recall = 0.0;               // present / (present + absent)
};

struct SeedRecallReport {
    std::vector<SeedRecallRow> rows;
    // Seeds that never passed candidate selection; excluded from the
    // recall denominator.
    std::vector<std::string> not_considered;
};

// `ranked_full` must be the complete ranking over selected candidates,
// so membership decides whether a seed was considered at all.
SeedRecallReport seed_recall(const std::vector<std::string>& ranked_full,
                             const std::vector<std::string>& seeds,
                             const std::vector<std::size_t>& cutoffs);

struct RankShift {
    std::string token;
    std::size_t undistilled_rank = 0;  // 1-based
    std::size_t distilled_rank = 0;
    std::int64_t delta = 0;  // distilled - undistilled; positive = demoted
};

// Both rankings must cover the same candidate set; throws ConfigError
// otherwise. Result sorted by delta descending (worst demotions first).
std::vector<RankShift> rank_shift(const std::vector<std::string>& distilled,
                                  const std::vector<std::string>& undistilled);

struct EvalReport {
    std::string key;  // ranking key the precision rows were computed on
    std::vector<PrecisionRow> precision;
    SeedRecallReport seeds;
    std::vector<RankShift> shifts;
};

std::string eval_report_json(const EvalReport& report);
std::string precision_csv(const std::vector<PrecisionRow>& rows);

}  // namespace deop

#endif  // DEOP_EVALUATOR_HPP
