#include "deop/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "deop/errors.hpp"
#include "deop/numfmt.hpp"

namespace deop {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

template <typename LineFn>
void for_each_data_line(std::string_view text, LineFn&& fn) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        ++line_no;
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line.front() == '#') continue;
        fn(line, line_no);
    }
}

}  // namespace

std::string_view gold_label_name(GoldLabel label) {
    return kGoldLabelNames[static_cast<std::size_t>(label)];
}

std::optional<GoldLabel> parse_gold_label(std::string_view name) {
    for (std::size_t i = 0; i < kGoldLabelNames.size(); ++i)
        if (name == kGoldLabelNames[i]) return static_cast<GoldLabel>(i);
    return std::nullopt;
}

GoldLabels parse_gold_labels(std::string_view text) {
    GoldLabels gold;
    for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ConfigError("gold file: missing tab at line " +
                              std::to_string(line_no));
        std::string token(trim(line.substr(0, tab)));
        fold_case(token);
        const auto label = parse_gold_label(trim(line.substr(tab + 1)));
        if (!label)
            throw ConfigError("gold file: unknown label at line " +
                              std::to_string(line_no));
        gold[token] = *label;
    });
    return gold;
}

std::vector<std::string> parse_token_list(std::string_view text) {
    std::vector<std::string> tokens;
    for_each_data_line(text, [&](std::string_view line, std::size_t) {
        std::string token(line);
        fold_case(token);
        tokens.push_back(std::move(token));
    });
    return tokens;
}

std::vector<PrecisionRow> precision_at_k(const std::vector<std::string>& ranked,
                                         const GoldLabels& gold,
                                         const std::vector<std::size_t>& ks) {
    if (ks.empty()) throw ConfigError("precision_at_k: no cutoffs given");
    for (const std::size_t k : ks)
        if (k > ranked.size())
            throw ConfigError("precision_at_k: cutoff " + std::to_string(k) +
                              " exceeds ranking length " +
                              std::to_string(ranked.size()));

    std::vector<std::size_t> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());

    std::vector<PrecisionRow> rows;
    PrecisionRow acc;
    std::size_t pos = 0;
    for (const std::size_t k : sorted_ks) {
        for (; pos < k; ++pos) {
            auto it = gold.find(ranked[pos]);
            if (it == gold.end())
                ++acc.unknown;
            else
                ++acc.label_counts[static_cast<std::size_t>(it->second)];
        }
        PrecisionRow row = acc;
        row.k = k;
        const auto count = [&row](GoldLabel l) {
            return row.label_counts[static_cast<std::size_t>(l)];
        };
        const std::size_t hits = count(GoldLabel::kDeNd) +
                                 count(GoldLabel::kSuperlative) +
                                 count(GoldLabel::kComparative) +
                                 count(GoldLabel::kConditional);
        row.strict = static_cast<double>(hits) / static_cast<double>(k);
        row.lenient = static_cast<double>(hits + count(GoldLabel::kHard)) /
                      static_cast<double>(k);
        rows.push_back(row);
    }
    return rows;
}

SeedRecallReport seed_recall(const std::vector<std::string>& ranked_full,
                             const std::vector<std::string>& seeds,
                             const std::vector<std::size_t>& cutoffs) {
    if (seeds.empty()) throw ConfigError("seed_recall: empty seed list");

    StringMap<std::size_t> position;  // token -> 1-based rank
    for (std::size_t i = 0; i < ranked_full.size(); ++i)
        position.emplace(ranked_full[i], i + 1);

    SeedRecallReport report;
    std::vector<std::pair<std::string, std::size_t>> considered;
    for (const auto& seed : seeds) {
        auto it = position.find(seed);
        if (it == position.end())
            report.not_considered.push_back(seed);
        else
            considered.emplace_back(seed, it->second);
    }

    std::vector<std::size_t> sorted_cutoffs = cutoffs;
    std::sort(sorted_cutoffs.begin(), sorted_cutoffs.end());
    for (const std::size_t cutoff : sorted_cutoffs) {
        SeedRecallRow row;
        row.cutoff = cutoff;
        for (const auto& [seed, pos] : considered) {
            if (pos <= cutoff)
                row.present.push_back(seed);
            else
                row.absent.push_back(seed);
        }
        row.recall = considered.empty()
                         ? 0.0
                         : static_cast<double>(row.present.size()) /
                               static_cast<double>(considered.size());
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<RankShift> rank_shift(const std::vector<std::string>& distilled,
                                  const std::vector<std::string>& undistilled) {
    if (distilled.size() != undistilled.size())
        throw ConfigError("rank_shift: rankings cover different candidate sets");

    StringMap<std::size_t> undist_rank;
    for (std::size_t i = 0; i < undistilled.size(); ++i)
        undist_rank.emplace(undistilled[i], i + 1);

    std::vector<RankShift> shifts;
    shifts.reserve(distilled.size());
    for (std::size_t i = 0; i < distilled.size(); ++i) {
        auto it = undist_rank.find(distilled[i]);
        if (it == undist_rank.end())
            throw ConfigError("rank_shift: token only in one ranking: " +
                              distilled[i]);
        RankShift shift;
        shift.token = distilled[i];
        shift.distilled_rank = i + 1;
        shift.undistilled_rank = it->second;
        shift.delta = static_cast<std::int64_t>(shift.distilled_rank) -
                      static_cast<std::int64_t>(shift.undistilled_rank);
        shifts.push_back(std::move(shift));
    }
    std::sort(shifts.begin(), shifts.end(), [](const RankShift& a, const RankShift& b) {
        if (a.delta != b.delta) return a.delta > b.delta;
        return a.token < b.token;
    });
    return shifts;
}

std::string eval_report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["key"] = report.key;
    j["precision"] = nlohmann::ordered_json::array();
    for (const auto& row : report.precision) {
        nlohmann::ordered_json r;
        r["k"] = row.k;
        nlohmann::ordered_json counts;
        for (std::size_t i = 0; i < kGoldLabelNames.size(); ++i)
            counts[std::string(kGoldLabelNames[i])] = row.label_counts[i];
        r["counts"] = counts;
        r["unknown"] = row.unknown;
        r["strict"] = row.strict;
        r["lenient"] = row.lenient;
        j["precision"].push_back(r);
    }

    nlohmann::ordered_json seeds;
    seeds["not_considered"] = report.seeds.not_considered;
    seeds["cutoffs"] = nlohmann::ordered_json::array();
    for (const auto& row : report.seeds.rows) {
        nlohmann::ordered_json r;
        r["cutoff"] = row.cutoff;
        r["recall"] = row.recall;
        r["present"] = row.present;
        r["absent"] = row.absent;
        seeds["cutoffs"].push_back(r);
    }
    j["seed_recall"] = seeds;

    j["rank_shifts"] = nlohmann::ordered_json::array();
    for (const auto& shift : report.shifts) {
        nlohmann::ordered_json r;
        r["token"] = shift.token;
        r["undistilled_rank"] = shift.undistilled_rank;
        r["distilled_rank"] = shift.distilled_rank;
        r["delta"] = shift.delta;
        j["rank_shifts"].push_back(r);
    }
    return j.dump(2) + "\n";
}

std::string precision_csv(const std::vector<PrecisionRow>& rows) {
    std::ostringstream out;
    out << "k,strict,lenient\n";
    for (const auto& row : rows)
        out << row.k << ',' << format_double(row.strict) << ','
            << format_double(row.lenient) << '\n';
    return out.str();
}

}  // namespace deop
