#include "coper/app/engine.hpp"
#include "coper/app/report.hpp"
#include "coper/app/service.hpp"
#include "coper/common/error.hpp"
#include "coper/common/util.hpp"
#include "coper/evalkit/evaluate.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <iostream>
#include <thread>

using namespace coper;

namespace {

app::SearchService* g_service = nullptr;

void on_signal(int)
{
    if (g_service) g_service->stop();
}

struct Globals {
    std::string config_file;
    std::string data_dir = COPER_DATA_DIR;
    std::string index_dir;
    int threads = -1;
};

app::EngineConfig make_config(const Globals& g)
{
    auto c = app::EngineConfig::defaults(g.data_dir);
    if (!g.config_file.empty()) {
        c = app::EngineConfig::load(g.config_file, c);
    } else if (std::filesystem::exists("coper.conf")) {
        c = app::EngineConfig::load("coper.conf", c);
    }
    c.apply_env();
    if (!g.index_dir.empty()) c.index_dir = g.index_dir;
    if (g.threads >= 0) c.threads = static_cast<unsigned>(g.threads);
    c.validate();
    return c;
}

void print_table(const app::EngineState& state, const app::SearchOutput& out)
{
    std::printf("omega\t%s\n", format6(out.omega).c_str());
    std::printf("rank\tdoc_id\tjss\tbm25\ttfidf_sim\tsem_sim\ttitle\n");
    for (const auto& r : out.results) {
        const auto* d = state.corpus->find(r.doc_id);
        std::printf("%zu\t%s\t%s\t%s\t%s\t%s\t%s\n", r.rank, r.doc_id.c_str(), format6(r.jss).c_str(),
                    format6(r.bm25).c_str(), format6(r.tfidf_sim).c_str(), format6(r.sem_sim).c_str(),
                    d ? d->title.c_str() : "");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"coper: two-stage Persian document search (BM25 pool, TF-IDF and semantic re-ranking)"};
    cli.require_subcommand(1);
    Globals g;
    cli.add_option("--config", g.config_file, "key = value configuration file (default ./coper.conf if present)");
    cli.add_option("--data", g.data_dir, "directory with the default resource files");
    cli.add_option("--index", g.index_dir, "index directory (overrides index_dir)");
    cli.add_option("--threads", g.threads, "worker threads for build (0 = all cores)");

    auto* ingest = cli.add_subcommand("ingest", "normalize a JSONL corpus into the index directory");
    std::string corpus_path;
    ingest->add_option("corpus", corpus_path, "JSONL file with id, title, body per line")->required();

    auto* build = cli.add_subcommand("build", "build lexical, keyword and vector indexes");
    bool rebuild = false;
    build->add_flag("--rebuild", rebuild, "rebuild even when the index is current");

    auto* search = cli.add_subcommand("search", "search the built index");
    std::string query;
    std::optional<std::size_t> k;
    std::optional<double> omega;
    bool as_json = false;
    search->add_option("query", query)->required();
    search->add_option("--k", k, "number of results (default top_k)")->check(CLI::PositiveNumber);
    search->add_option("--omega", omega, "fixed wordiness weight in [0,1]");
    search->add_flag("--json", as_json, "print the HTTP response body");

    auto* run = cli.add_subcommand("run", "search every query of a TSV query set and write a TREC run");
    std::string queries_path, run_out, tag = "coper";
    run->add_option("--queries", queries_path, "TSV query_id<TAB>query_text")->required();
    run->add_option("--out", run_out, "output file (default stdout)");
    run->add_option("--k", k, "results per query (default top_k)")->check(CLI::PositiveNumber);
    run->add_option("--omega", omega, "fixed wordiness weight in [0,1]");
    run->add_option("--tag", tag, "run tag");

    auto* eval = cli.add_subcommand("eval", "score a TREC run against qrels");
    std::string eval_run, qrels_path, sts_path, eval_queries, json_out, tsv_out;
    std::size_t eval_k = 10;
    eval->add_option("--run", eval_run)->required();
    eval->add_option("--qrels", qrels_path)->required();
    eval->add_option("--sts", sts_path, "TSV query_id<TAB>doc_id<TAB>grade for ASTS");
    eval->add_option("--queries", eval_queries, "query set handed to the STS oracle");
    eval->add_option("--k", eval_k, "metric cutoff")->check(CLI::PositiveNumber);
    eval->add_option("--json", json_out, "write the JSON report here");
    eval->add_option("--tsv", tsv_out, "write the TSV report here (default stdout)");

    auto* stats = cli.add_subcommand("stats", "monthly top noun-phrase words and word-count comparison");
    std::string stats_dir;
    stats->add_option("--out-dir", stats_dir, "write monthly.tsv, counts.tsv and stats.json here");

    auto* serve = cli.add_subcommand("serve", "serve the HTTP API");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host);
    serve->add_option("--port", port);

    auto* kw = cli.add_subcommand("keywords", "extract noun phrases from a plain-text document");
    std::string doc_path;
    std::size_t kw_k = 10;
    kw->add_option("--doc", doc_path, "UTF-8 text file")->required();
    kw->add_option("--k", kw_k, "number of keywords")->check(CLI::PositiveNumber);

    auto* show = cli.add_subcommand("config", "print the effective configuration");

    CLI11_PARSE(cli, argc, argv);

    try {
        auto config = make_config(g);
        if (*ingest) {
            auto corpus = app::ingest(corpus_path, text::CharMap::load(config.mapping));
            app::store_corpus(corpus, config);
            std::printf("ingested %zu documents\nsnapshot %s\n", corpus.size(), corpus.snapshot().hex().c_str());
        } else if (*build) {
            bool built = app::build_all(config, rebuild);
            std::printf("%s %s\n", built ? "built" : "up to date", config.index_dir.string().c_str());
        } else if (*search) {
            auto state = app::load_engine(config);
            auto out = app::run_search(state, query, k, omega);
            if (as_json) {
                std::printf("%s\n", app::search_json(state, out).c_str());
            } else {
                print_table(state, out);
            }
        } else if (*run) {
            auto state = app::load_engine(config);
            evalkit::Run trec;
            for (const auto& [qid, text] : evalkit::load_queries(queries_path)) {
                auto& entries = trec[qid];
                for (const auto& r : app::run_search(state, text, k, omega).results) {
                    entries.push_back({r.doc_id, r.rank, r.jss});
                }
            }
            auto rendered = evalkit::format_run(trec, tag);
            if (run_out.empty()) {
                std::fwrite(rendered.data(), 1, rendered.size(), stdout);
            } else {
                write_file_atomic(run_out, rendered);
            }
        } else if (*eval) {
            auto trec = evalkit::load_run(eval_run);
            auto qrels = evalkit::load_qrels(qrels_path);
            std::optional<evalkit::FileStsOracle> oracle;
            std::optional<evalkit::QuerySet> qs;
            if (!sts_path.empty()) oracle = evalkit::FileStsOracle::load(sts_path);
            if (!eval_queries.empty()) qs = evalkit::load_queries(eval_queries);
            auto report = evalkit::evaluate(trec, qrels,
                                            {.k = eval_k, .oracle = oracle ? &*oracle : nullptr,
                                             .queries = qs ? &*qs : nullptr});
            for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            if (!json_out.empty()) write_file_atomic(json_out, evalkit::report_json(report));
            auto tsv = evalkit::report_tsv(report);
            if (tsv_out.empty()) {
                std::fwrite(tsv.data(), 1, tsv.size(), stdout);
            } else {
                write_file_atomic(tsv_out, tsv);
            }
        } else if (*stats) {
            auto state = app::load_engine(config);
            auto s = app::corpus_stats(*state.corpus, state.keywords, *state.resources.pipeline);
            if (stats_dir.empty()) {
                std::fputs(app::monthly_tsv(s).c_str(), stdout);
                std::fputs("\n", stdout);
                std::fputs(app::counts_tsv(s).c_str(), stdout);
            } else {
                std::filesystem::path dir(stats_dir);
                write_file_atomic(dir / "monthly.tsv", app::monthly_tsv(s));
                write_file_atomic(dir / "counts.tsv", app::counts_tsv(s));
                write_file_atomic(dir / "stats.json", app::corpus_stats_json(s));
                std::printf("%zu months, %zu documents -> %s\n", s.monthly.size(), s.counts.size(), stats_dir.c_str());
            }
        } else if (*serve) {
            app::SearchService service;
            g_service = &service;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            int bound = service.bind(host, port);
            std::fprintf(stderr, "listening on http://%s:%d\n", host.c_str(), bound);
            std::jthread loader([&] {
                try {
                    service.set_state(std::make_shared<const app::EngineState>(app::load_engine(config)));
                    std::fprintf(stderr, "engine loaded\n");
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "error: %s\n", e.what());
                    service.stop();
                }
            });
            service.listen();
            g_service = nullptr;
        } else if (*kw) {
            auto res = app::load_resources(config);
            text::RawDocument doc{"doc", "doc", read_file(doc_path), std::nullopt, std::nullopt};
            auto phrases = keywords::extract_keywords(doc, kw_k, *res.pipeline, *res.ner, config.max_ngram);
            std::printf("rank\tphrase\tkeyword\tscore\n");
            for (std::size_t i = 0; i < phrases.size(); ++i) {
                std::printf("%zu\t%s\t%s\t%.17g\n", i + 1, phrases[i].text.c_str(), phrases[i].keyword.c_str(),
                            phrases[i].score);
            }
        } else if (*show) {
            std::fputs(config.render().c_str(), stdout);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
