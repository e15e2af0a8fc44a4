// deop: discover downward-entailing operator candidates from a raw
// corpus by NPI co-occurrence scoring and distillation re-ranking.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "deop/errors.hpp"
#include "deop/pipeline.hpp"

namespace {

struct CliOptions {
    deop::PipelineConfig config;
    std::string mode = "pretokenized";
    std::string key = "distilled";
    std::string ks;            // comma-separated precision cutoffs
    std::string seed_cutoffs;  // comma-separated
    bool no_span_dedup = false;
    std::string scores_file;              // rank
    std::string scores_distilled_file;    // eval
    std::string scores_undistilled_file;  // eval
};

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& what) {
    std::vector<std::size_t> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        std::size_t value = 0;
        const auto [end, ec] =
            std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || end != item.data() + item.size())
            throw deop::ConfigError("bad " + what + " value: " + item);
        values.push_back(value);
    }
    return values;
}

void finalize(CliOptions& opts) {
    const auto mode = deop::parse_tokenizer_mode(opts.mode);
    if (!mode) throw deop::ConfigError("unknown tokenizer mode: " + opts.mode);
    opts.config.mode = *mode;

    if (opts.key == "distilled")
        opts.config.key = deop::RankKey::kDistilled;
    else if (opts.key == "undistilled")
        opts.config.key = deop::RankKey::kUndistilled;
    else
        throw deop::ConfigError("unknown ranking key: " + opts.key);

    if (!opts.ks.empty()) opts.config.ks = parse_size_list(opts.ks, "cutoff");
    if (!opts.seed_cutoffs.empty())
        opts.config.seed_cutoffs = parse_size_list(opts.seed_cutoffs, "seed cutoff");
    opts.config.dedup_spans = !opts.no_span_dedup;
}

void print_written(const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unsupervised discovery of downward-entailing operators"};
    app.require_subcommand(1);

    CliOptions opts;

    // Shared pipeline options live on the top level so a flat key=value
    // config file can set any of them; subcommands fall through to here,
    // and command-line flags always beat the config file.
    app.set_config("--config", "", "flat key=value config file; flags win");
    app.add_option("--corpus", opts.config.corpus,
                   "corpus file, one sentence per line (.gz accepted)");
    app.add_option("--lexicon", opts.config.lexicon_path,
                   "NPI lexicon file (default: bundled list)");
    app.add_option("--blocklist", opts.config.blocklist_path,
                   "well-known-operator blocklist (default: bundled list)");
    app.add_option("--mode", opts.mode, "tokenizer mode: pretokenized|basic");
    app.add_option("--min-corpus", opts.config.min_corpus,
                   "discard candidates with corpus frequency <= this");
    app.add_option("--min-ctx", opts.config.min_ctx,
                   "discard candidates in <= this many NPI contexts");
    app.add_option("--out", opts.config.out_dir, "output directory");
    app.add_option("--key", opts.key, "ranking key: distilled|undistilled");
    app.add_option("--k", opts.config.top_k, "ranked-list length");
    app.add_option("--ks", opts.ks, "precision cutoffs, comma-separated");
    app.add_option("--seed-cutoffs", opts.seed_cutoffs,
                   "seed recall cutoffs, comma-separated");
    app.add_option("--gold", opts.config.gold_path,
                   "gold label file (token<TAB>LABEL)");
    app.add_option("--seeds", opts.config.seeds_path, "seed token file");
    app.add_option("--shards", opts.config.shards,
                   "parallel ingestion shards (output is shard-invariant)");
    app.add_flag("--winner-takes-all", opts.config.winner_takes_all,
                 "experimental: whole context budget to the top candidate");
    app.add_flag("--no-span-dedup", opts.no_span_dedup,
                 "count duplicate context spans per NPI occurrence");

    auto* cmd_stats = app.add_subcommand("stats", "corpus and NPI-context counts");
    auto* cmd_contexts =
        app.add_subcommand("contexts", "dump extracted NPI contexts");
    auto* cmd_score = app.add_subcommand("score", "write score dumps for both keys");
    auto* cmd_rank = app.add_subcommand("rank", "write a top-k ranked list");
    cmd_rank->add_option("--scores", opts.scores_file,
                         "rank an existing score dump instead of a corpus");
    auto* cmd_eval =
        app.add_subcommand("eval", "precision@k, seed recall, rank shifts");
    cmd_eval->add_option("--scores-distilled", opts.scores_distilled_file,
                         "existing distilled score dump");
    cmd_eval->add_option("--scores-undistilled", opts.scores_undistilled_file,
                         "existing undistilled score dump");
    auto* cmd_run = app.add_subcommand("run", "full pipeline, all artifacts");

    for (auto* cmd : {cmd_stats, cmd_contexts, cmd_score, cmd_rank, cmd_eval, cmd_run})
        cmd->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return deop::kExitConfig;
    }

    try {
        finalize(opts);
        if (cmd_stats->parsed()) {
            print_written(deop::run_stats(opts.config));
        } else if (cmd_contexts->parsed()) {
            print_written(deop::run_contexts(opts.config));
        } else if (cmd_score->parsed()) {
            print_written(deop::run_score(opts.config));
        } else if (cmd_rank->parsed()) {
            if (opts.scores_file.empty() && opts.config.corpus.empty())
                throw deop::ConfigError("rank needs --corpus or --scores");
            print_written(deop::run_rank(opts.config, opts.scores_file));
        } else if (cmd_eval->parsed()) {
            if (opts.scores_distilled_file.empty() && opts.config.corpus.empty())
                throw deop::ConfigError(
                    "eval needs --corpus or --scores-distilled/--scores-undistilled");
            print_written(deop::run_eval(opts.config, opts.scores_distilled_file,
                                         opts.scores_undistilled_file));
        } else if (cmd_run->parsed()) {
            print_written(deop::run_all(opts.config));
        }
    } catch (const deop::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return deop::kExitConfig;
    } catch (const deop::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return deop::kExitIo;
    } catch (const deop::EmptyResultError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return deop::kExitEmpty;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return deop::kExitOk;
}
