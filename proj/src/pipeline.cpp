#include "deop/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "deop/errors.hpp"
#include "deop/numfmt.hpp"

namespace deop {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    if (corpus.empty()) throw ConfigError("no corpus file given");
    if (shards < 1) throw ConfigError("shard count must be >= 1");
}

NpiLexicon load_lexicon(const PipelineConfig& config) {
    std::string lex_text = config.lexicon_path.empty()
                               ? std::string(default_npi_lexicon_text())
                               : read_file(config.lexicon_path);
    std::string block_text = config.blocklist_path.empty()
                                 ? std::string(default_blocklist_text())
                                 : read_file(config.blocklist_path);
    return NpiLexicon(parse_npi_patterns(lex_text),
                      parse_blocklist(block_text));
}

namespace {

struct ShardOut {
    CorpusStats stats;
    std::vector<NpiContext> contexts;
    std::uint64_t lines = 0;
    std::uint64_t sentences = 0;
    std::uint64_t contexts_total = 0;
    std::uint64_t contexts_retained = 0;
    std::uint64_t bad_utf8_local_line = 0;  // 0 = none
    std::exception_ptr error;
};

// One pass over a shard's lines: tokenize, count, match, extract.
template <typename NextLine>
void process_shard(NextLine&& next, TokenizerMode mode, const NpiLexicon& lexicon,
                   bool dedup_spans, bool check_utf8, ShardOut& out) {
    std::string line;
    while (next(line)) {
        ++out.lines;
        if (check_utf8 && !valid_utf8(line)) {
            out.bad_utf8_local_line = out.lines;
            return;
        }
        auto tokens = tokenize_line(line, mode);
        if (tokens.empty()) continue;
        Sentence sentence{out.sentences++, std::move(tokens)};
        out.stats.add(sentence);
        const auto matches = match_npis(sentence, lexicon);
        if (matches.empty()) continue;
        auto contexts = extract_contexts(sentence, matches, lexicon.blocklist(),
                                         dedup_spans);
        out.contexts_total += contexts.size();
        for (auto& ctx : contexts) {
            if (ctx.retained) ++out.contexts_retained;
            out.contexts.push_back(std::move(ctx));
        }
    }
}

bool has_gz_suffix(const std::string& path) {
    return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

IngestResult merge_shards(std::vector<ShardOut>& shards, const std::string& path) {
    // Earliest shard wins error reporting so line numbers are exact.
    std::uint64_t lines_before = 0;
    for (auto& shard : shards) {
        if (shard.bad_utf8_local_line != 0)
            throw IoError("invalid UTF-8 in " + path + " at line " +
                          std::to_string(lines_before + shard.bad_utf8_local_line));
        if (shard.error) std::rethrow_exception(shard.error);
        lines_before += shard.lines;
    }

    IngestResult result;
    std::uint64_t sentence_offset = 0;
    for (auto& shard : shards) {
        for (auto& ctx : shard.contexts) {
            ctx.sentence_id += sentence_offset;
            result.contexts.push_back(std::move(ctx));
        }
        sentence_offset += shard.sentences;
        result.stats.merge(std::move(shard.stats));
        result.contexts_total += shard.contexts_total;
        result.contexts_retained += shard.contexts_retained;
    }
    sort_contexts(result.contexts);
    return result;
}

}  // namespace

IngestResult ingest_corpus(const PipelineConfig& config, const NpiLexicon& lexicon) {
    config.validate();
    const unsigned n_shards = config.shards;
    std::vector<ShardOut> outs(n_shards);

    if (has_gz_suffix(config.corpus)) {
        // Compressed input cannot be byte-range sharded; read lines
        // sequentially (validating UTF-8 with exact line numbers), then
        // hand contiguous blocks to the workers.
        std::vector<std::string> lines;
        {
            auto reader = open_line_reader(config.corpus);
            std::string line;
            std::uint64_t line_no = 0;
            while (reader->next(line)) {
                ++line_no;
                if (!valid_utf8(line))
                    throw IoError("invalid UTF-8 in " + config.corpus +
                                  " at line " + std::to_string(line_no));
                lines.push_back(line);
            }
        }
        auto worker = [&](unsigned idx) {
            const std::size_t lo = lines.size() * idx / n_shards;
            const std::size_t hi = lines.size() * (idx + 1) / n_shards;
            std::size_t pos = lo;
            auto next = [&](std::string& line) {
                if (pos >= hi) return false;
                line = lines[pos++];
                return true;
            };
            process_shard(next, config.mode, lexicon, config.dedup_spans,
                          /*check_utf8=*/false, outs[idx]);
        };
        if (n_shards == 1) {
            worker(0);
        } else {
            std::vector<std::thread> threads;
            for (unsigned i = 0; i < n_shards; ++i) threads.emplace_back(worker, i);
            for (auto& t : threads) t.join();
        }
        return merge_shards(outs, config.corpus);
    }

    const std::uint64_t size = file_size_bytes(config.corpus);
    auto worker = [&](unsigned idx) {
        try {
            const std::uint64_t begin = size * idx / n_shards;
            const std::uint64_t end = size * (idx + 1) / n_shards;
            auto reader = open_byte_range_reader(config.corpus, begin, end);
            auto next = [&](std::string& line) { return reader->next(line); };
            process_shard(next, config.mode, lexicon, config.dedup_spans,
                          /*check_utf8=*/true, outs[idx]);
        } catch (...) {
            outs[idx].error = std::current_exception();
        }
    };
    if (n_shards == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < n_shards; ++i) threads.emplace_back(worker, i);
        for (auto& t : threads) t.join();
    }
    return merge_shards(outs, config.corpus);
}

ScoreResult score_corpus(const PipelineConfig& config, const IngestResult& ingest) {
    std::vector<NpiContext> retained;
    retained.reserve(ingest.contexts_retained);
    for (const auto& ctx : ingest.contexts)
        if (ctx.retained) retained.push_back(ctx);

    ScoreResult result;
    result.counts = accumulate_counts(ingest.stats, retained);
    result.candidates = select_candidates(result.counts, config.min_corpus,
                                          config.min_ctx);
    result.scores = distill(undistilled_scores(result.counts, result.candidates),
                            retained, config.winner_takes_all);
    return result;
}

std::string stats_json(const IngestResult& ingest) {
    nlohmann::ordered_json j;
    j["sentences"] = ingest.stats.sentence_count;
    j["tokens"] = ingest.stats.token_count;
    j["types"] = ingest.stats.type_counts.size();
    j["npi_contexts"] = ingest.contexts_total;
    j["npi_contexts_retained"] = ingest.contexts_retained;
    return j.dump(2) + "\n";
}

std::string context_dump_tsv(const IngestResult& ingest, const NpiLexicon& lexicon) {
    std::string out = "#sentence_id\tstart\tend\tretained\ttrigger\tspan\n";
    for (const auto& ctx : ingest.contexts) {
        out += std::to_string(ctx.sentence_id);
        out += '\t';
        out += std::to_string(ctx.start);
        out += '\t';
        out += std::to_string(ctx.end);
        out += '\t';
        out += ctx.retained ? '1' : '0';
        out += '\t';
        const auto& pattern = lexicon.patterns()[ctx.pattern_index].tokens;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (i > 0) out += ' ';
            out += pattern[i];
        }
        out += '\t';
        for (std::size_t i = 0; i < ctx.span_tokens.size(); ++i) {
            if (i > 0) out += ' ';
            out += ctx.span_tokens[i];
        }
        out += '\n';
    }
    return out;
}

std::string score_dump_tsv(const ScoreTable& scores, RankKey key) {
    auto ranked = rank(scores, key, scores.entries().size());
    std::string out = "#rank\ttoken\ts_d\ts\tcorpus_count\tctx_count\n";
    std::size_t position = 1;
    for (const auto& e : ranked) {
        out += std::to_string(position++);
        out += '\t';
        out += e.token;
        out += '\t';
        out += format_double(e.s_d);
        out += '\t';
        out += format_double(e.s);
        out += '\t';
        out += std::to_string(e.corpus_count);
        out += '\t';
        out += std::to_string(e.ctx_count);
        out += '\n';
    }
    return out;
}

std::string ranked_list_text(const ScoreTable& scores, RankKey key, std::size_t k) {
    auto ranked = rank(scores, key, k);
    std::string out;
    for (const auto& e : ranked) {
        out += e.token;
        out += '\n';
    }
    return out;
}

std::string rank_shift_tsv(const std::vector<RankShift>& shifts) {
    std::string out = "#token\tundistilled_rank\tdistilled_rank\tdelta\n";
    for (const auto& shift : shifts) {
        out += shift.token;
        out += '\t';
        out += std::to_string(shift.undistilled_rank);
        out += '\t';
        out += std::to_string(shift.distilled_rank);
        out += '\t';
        out += std::to_string(shift.delta);
        out += '\n';
    }
    return out;
}

ScoreTable parse_score_dump(std::string_view text) {
    std::vector<ScoreEntry> entries;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string_view::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cols.size() != 6)
            throw ConfigError("score dump: expected 6 columns at line " +
                              std::to_string(line_no));
        ScoreEntry e;
        e.token = std::string(cols[1]);
        const auto parse_f = [&](std::string_view sv, double& out_v) {
            auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out_v);
            if (ec != std::errc() || p != sv.data() + sv.size())
                throw ConfigError("score dump: bad number at line " +
                                  std::to_string(line_no));
        };
        const auto parse_u = [&](std::string_view sv, std::uint64_t& out_v) {
            auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out_v);
            if (ec != std::errc() || p != sv.data() + sv.size())
                throw ConfigError("score dump: bad count at line " +
                                  std::to_string(line_no));
        };
        parse_f(cols[2], e.s_d);
        parse_f(cols[3], e.s);
        parse_u(cols[4], e.corpus_count);
        parse_u(cols[5], e.ctx_count);
        entries.push_back(std::move(e));
    }
    return ScoreTable(std::move(entries));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading file: " + path);
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error writing file: " + path);
}

namespace {

// Fail on unreadable inputs before any artifact is created.
void probe_inputs(const PipelineConfig& config) {
    config.validate();
    open_line_reader(config.corpus);
    if (!config.lexicon_path.empty()) read_file(config.lexicon_path);
    if (!config.blocklist_path.empty()) read_file(config.blocklist_path);
    if (!config.gold_path.empty()) read_file(config.gold_path);
    if (!config.seeds_path.empty()) read_file(config.seeds_path);
}

std::string out_path(const PipelineConfig& config, const std::string& name) {
    if (config.out_dir.empty()) return name;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + config.out_dir);
    return (fs::path(config.out_dir) / name).string();
}

std::string_view key_name(RankKey key) {
    return key == RankKey::kDistilled ? "distilled" : "undistilled";
}

std::vector<std::size_t> effective_ks(const PipelineConfig& config, std::size_t n) {
    std::vector<std::size_t> ks = config.ks;
    if (ks.empty())
        for (std::size_t k = 10; k <= 150; k += 10) ks.push_back(k);
    std::erase_if(ks, [n](std::size_t k) { return k == 0 || k > n; });
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.empty() && n > 0) ks.push_back(n);  // ranking shorter than all cutoffs
    return ks;
}

std::vector<std::string> ranked_tokens(const ScoreTable& scores, RankKey key) {
    std::vector<std::string> tokens;
    for (const auto& e : rank(scores, key, scores.entries().size()))
        tokens.push_back(e.token);
    return tokens;
}

std::vector<std::string> write_eval_artifacts(const PipelineConfig& config,
                                              const ScoreTable& distilled_table,
                                              const ScoreTable& undistilled_table) {
    if (config.gold_path.empty() && config.seeds_path.empty())
        throw ConfigError("eval requires a gold file and/or a seed file");

    const auto dist_ranking = ranked_tokens(distilled_table, RankKey::kDistilled);
    const auto undist_ranking =
        ranked_tokens(undistilled_table, RankKey::kUndistilled);
    const auto& key_ranking =
        config.key == RankKey::kDistilled ? dist_ranking : undist_ranking;
    if (key_ranking.empty()) throw EmptyResultError("no scored candidates");

    EvalReport report;
    report.key = key_name(config.key);
    if (!config.gold_path.empty()) {
        const auto gold = parse_gold_labels(read_file(config.gold_path));
        report.precision =
            precision_at_k(key_ranking, gold, effective_ks(config, key_ranking.size()));
    }
    if (!config.seeds_path.empty()) {
        const auto seeds = parse_token_list(read_file(config.seeds_path));
        report.seeds = seed_recall(key_ranking, seeds, config.seed_cutoffs);
    }
    report.shifts = rank_shift(dist_ranking, undist_ranking);

    std::vector<std::string> written;
    const std::string report_path = out_path(config, "eval_report.json");
    write_file(report_path, eval_report_json(report));
    written.push_back(report_path);
    if (!report.precision.empty()) {
        const std::string csv_path = out_path(config, "precision.csv");
        write_file(csv_path, precision_csv(report.precision));
        written.push_back(csv_path);
    }
    return written;
}

}  // namespace

std::vector<std::string> run_stats(const PipelineConfig& config) {
    probe_inputs(config);
    const auto lexicon = load_lexicon(config);
    const auto ingest = ingest_corpus(config, lexicon);
    const std::string path = out_path(config, "stats.json");
    write_file(path, stats_json(ingest));
    return {path};
}

std::vector<std::string> run_contexts(const PipelineConfig& config) {
    probe_inputs(config);
    const auto lexicon = load_lexicon(config);
    const auto ingest = ingest_corpus(config, lexicon);
    const std::string path = out_path(config, "contexts.tsv");
    write_file(path, context_dump_tsv(ingest, lexicon));
    return {path};
}

std::vector<std::string> run_score(const PipelineConfig& config) {
    probe_inputs(config);
    const auto lexicon = load_lexicon(config);
    const auto ingest = ingest_corpus(config, lexicon);
    const auto scored = score_corpus(config, ingest);
    std::vector<std::string> written;
    for (const RankKey key : {RankKey::kDistilled, RankKey::kUndistilled}) {
        const std::string path = out_path(
            config, "scores_" + std::string(key_name(key)) + ".tsv");
        write_file(path, score_dump_tsv(scored.scores, key));
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> run_rank(const PipelineConfig& config,
                                  const std::string& scores_file) {
    std::string text;
    if (!scores_file.empty()) {
        text = ranked_list_text(parse_score_dump(read_file(scores_file)),
                                config.key, config.top_k);
    } else {
        probe_inputs(config);
        const auto lexicon = load_lexicon(config);
        const auto ingest = ingest_corpus(config, lexicon);
        const auto scored = score_corpus(config, ingest);
        text = ranked_list_text(scored.scores, config.key, config.top_k);
    }
    const std::string path = out_path(
        config, "ranked_" + std::string(key_name(config.key)) + ".txt");
    write_file(path, text);
    return {path};
}

std::vector<std::string> run_eval(const PipelineConfig& config,
                                  const std::string& scores_distilled_file,
                                  const std::string& scores_undistilled_file) {
    if (!scores_distilled_file.empty() != !scores_undistilled_file.empty())
        throw ConfigError("eval from files needs both score dumps");
    if (!scores_distilled_file.empty()) {
        const auto dist = parse_score_dump(read_file(scores_distilled_file));
        const auto undist = parse_score_dump(read_file(scores_undistilled_file));
        return write_eval_artifacts(config, dist, undist);
    }
    probe_inputs(config);
    const auto lexicon = load_lexicon(config);
    const auto ingest = ingest_corpus(config, lexicon);
    const auto scored = score_corpus(config, ingest);
    return write_eval_artifacts(config, scored.scores, scored.scores);
}

std::vector<std::string> run_all(const PipelineConfig& config) {
    probe_inputs(config);
    const auto lexicon = load_lexicon(config);
    const auto ingest = ingest_corpus(config, lexicon);
    const auto scored = score_corpus(config, ingest);

    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, std::string_view content) {
        const std::string path = out_path(config, name);
        write_file(path, content);
        written.push_back(path);
    };

    emit("stats.json", stats_json(ingest));
    emit("scores_distilled.tsv", score_dump_tsv(scored.scores, RankKey::kDistilled));
    emit("scores_undistilled.tsv",
         score_dump_tsv(scored.scores, RankKey::kUndistilled));
    emit("ranked_distilled.txt",
         ranked_list_text(scored.scores, RankKey::kDistilled, config.top_k));
    emit("ranked_undistilled.txt",
         ranked_list_text(scored.scores, RankKey::kUndistilled, config.top_k));
    emit("rank_shifts.tsv",
         rank_shift_tsv(rank_shift(ranked_tokens(scored.scores, RankKey::kDistilled),
                                   ranked_tokens(scored.scores, RankKey::kUndistilled))));
    if (!config.gold_path.empty() || !config.seeds_path.empty()) {
        const auto eval_files =
            write_eval_artifacts(config, scored.scores, scored.scores);
        written.insert(written.end(), eval_files.begin(), eval_files.end());
    }
    return written;
}

}  // namespace deop
