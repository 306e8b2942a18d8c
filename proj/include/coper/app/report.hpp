#pragma once

#include "coper/app/engine.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coper::app {

struct SearchOutput {
    std::string query;
    double omega = 0.0;
    std::vector<fusion::RankedResult> results;
};

/// k defaults to config.top_k; the reported omega is the override when
/// given, otherwise the query's wordiness estimate.
SearchOutput run_search(const EngineState& state, std::string_view query, std::optional<std::size_t> k = std::nullopt,
                        std::optional<double> omega = std::nullopt);

/// First `n` codepoints of the body.
std::string snippet(std::string_view body, std::size_t n = 160);

/// {"query","omega","results":[{doc_id,title,rank,jss,bm25,tfidf_sim,sem_sim,snippet}]}
/// with every score written as a fixed six-decimal number.
std::string search_json(const EngineState& state, const SearchOutput& out);

std::string doc_json(const EngineState& state, const text::RawDocument& doc);
std::string stats_json(const EngineState& state);

struct MonthlyTopWords {
    std::string month;  // YYYY-MM
    std::vector<std::pair<std::string, std::size_t>> words;
};

struct DocWordCounts {
    std::string doc_id;
    std::size_t body_words = 0;
    std::size_t phrase_words = 0;
};

struct CorpusStats {
    std::vector<MonthlyTopWords> monthly;  // ascending month
    std::vector<DocWordCounts> counts;     // corpus order
};

/// Per calendar month of published_at (docs without a YYYY-MM prefix are
/// left out), the 3 most frequent words among the extracted noun phrases,
/// ties by word. Per document, body words (non-punctuation tokens) against
/// the words of its noun phrases.
CorpusStats corpus_stats(const CorpusStore& corpus, const KeywordTable& keywords, const text::TextPipeline& pipeline,
                         std::size_t top = 3);

std::string monthly_tsv(const CorpusStats& stats);
std::string counts_tsv(const CorpusStats& stats);
std::string corpus_stats_json(const CorpusStats& stats);

}  // namespace coper::app
