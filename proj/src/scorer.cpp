#include "deop/scorer.hpp"

#include <algorithm>
#include <tuple>

#include "deop/errors.hpp"

namespace deop {

std::uint64_t CountTable::corpus_count_of(std::string_view token) const {
    auto it = corpus_count.find(token);
    return it == corpus_count.end() ? 0 : it->second;
}

std::uint64_t CountTable::ctx_count_of(std::string_view token) const {
    auto it = ctx_count.find(token);
    return it == ctx_count.end() ? 0 : it->second;
}

CountTable accumulate_counts(const CorpusStats& stats,
                             std::span<const NpiContext> contexts) {
    CountTable table;
    table.corpus_count = stats.type_counts;
    table.corpus_tokens = stats.token_count;
    for (const auto& ctx : contexts) {
        table.ctx_tokens += ctx.span_length();
        ++table.retained_contexts;
        for (const auto& cand : ctx.candidates) ++table.ctx_count[cand];
    }
    return table;
}

std::vector<std::string> select_candidates(const CountTable& table,
                                           std::uint64_t min_corpus,
                                           std::uint64_t min_ctx) {
    std::vector<std::string> out;
    for (const auto& [token, n_ctx] : table.ctx_count) {
        if (n_ctx <= min_ctx) continue;
        if (table.corpus_count_of(token) <= min_corpus) continue;
        out.push_back(token);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ScoreTable::ScoreTable(std::vector<ScoreEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.token < b.token; });
}

const ScoreEntry* ScoreTable::find(std::string_view token) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), token,
                               [](const ScoreEntry& e, std::string_view t) {
                                   return e.token < t;
                               });
    if (it == entries_.end() || it->token != token) return nullptr;
    return &*it;
}

double ScoreTable::s_of(std::string_view token) const {
    const ScoreEntry* e = find(token);
    return e == nullptr ? 0.0 : e->s;
}

ScoreTable undistilled_scores(const CountTable& table,
                              const std::vector<std::string>& candidates) {
    if (table.ctx_tokens == 0)
        throw EmptyResultError("no retained NPI contexts");
    if (table.corpus_tokens == 0)
        throw EmptyResultError("empty corpus");

    std::vector<ScoreEntry> entries;
    entries.reserve(candidates.size());
    for (const auto& token : candidates) {
        ScoreEntry e;
        e.token = token;
        e.corpus_count = table.corpus_count_of(token);
        e.ctx_count = table.ctx_count_of(token);
        if (e.ctx_count == 0 || e.corpus_count == 0) {
            e.s = 0.0;
        } else {
            const double f_npi = static_cast<double>(e.ctx_count) /
                                 static_cast<double>(table.ctx_tokens);
            const double f = static_cast<double>(e.corpus_count) /
                             static_cast<double>(table.corpus_tokens);
            e.s = f_npi / f;
        }
        entries.push_back(std::move(e));
    }
    return ScoreTable(std::move(entries));
}

ScoreTable distill(ScoreTable scores, std::span<const NpiContext> contexts,
                   bool winner_takes_all) {
    // Accumulator per scored candidate, indexed in token-sorted order so
    // the summation sequence is canonical.
    std::vector<double> share_sum(scores.entries_.size(), 0.0);
    std::vector<std::uint64_t> n_contexts(scores.entries_.size(), 0);

    auto index_of = [&](std::string_view token) -> std::ptrdiff_t {
        const ScoreEntry* e = scores.find(token);
        return e == nullptr ? -1 : e - scores.entries_.data();
    };

    std::vector<std::ptrdiff_t> members;
    for (const auto& ctx : contexts) {
        members.clear();
        double norm = 0.0;
        for (const auto& cand : ctx.candidates) {
            const std::ptrdiff_t idx = index_of(cand);
            if (idx < 0) continue;  // below thresholds, not scored
            members.push_back(idx);
            norm += scores.entries_[idx].s;
        }
        if (members.empty() || norm <= 0.0) continue;

        if (winner_takes_all) {
            std::ptrdiff_t best = members.front();
            for (const std::ptrdiff_t idx : members)
                if (scores.entries_[idx].s > scores.entries_[best].s) best = idx;
            for (const std::ptrdiff_t idx : members) {
                share_sum[idx] += (idx == best) ? 1.0 : 0.0;
                ++n_contexts[idx];
            }
        } else {
            for (const std::ptrdiff_t idx : members) {
                share_sum[idx] += scores.entries_[idx].s / norm;
                ++n_contexts[idx];
            }
        }
    }

    for (std::size_t i = 0; i < scores.entries_.size(); ++i) {
        scores.entries_[i].s_d =
            n_contexts[i] == 0 ? 0.0
                               : share_sum[i] / static_cast<double>(n_contexts[i]);
        scores.entries_[i].ctx_count = n_contexts[i];
    }
    return scores;
}

std::vector<ScoreEntry> rank(const ScoreTable& scores, RankKey key, std::size_t k) {
    std::vector<ScoreEntry> ranked = scores.entries();
    std::sort(ranked.begin(), ranked.end(),
              [key](const ScoreEntry& a, const ScoreEntry& b) {
                  const double ka = key == RankKey::kDistilled ? a.s_d : a.s;
                  const double kb = key == RankKey::kDistilled ? b.s_d : b.s;
                  return std::tie(kb, b.ctx_count, a.token) <
                         std::tie(ka, a.ctx_count, b.token);
              });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

}  // namespace deop
