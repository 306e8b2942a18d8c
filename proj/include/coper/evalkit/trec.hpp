#pragma once

#include "coper/evalkit/metrics.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace coper::evalkit {

/// query_id -> (doc_id -> grade).
using Qrels = std::map<std::string, Grades, std::less<>>;

struct RunEntry {
    std::string doc_id;
    std::size_t rank = 0;
    double score = 0.0;
};

/// query_id -> entries in rank order.
using Run = std::map<std::string, std::vector<RunEntry>, std::less<>>;

/// query_id -> query text.
using QuerySet = std::map<std::string, std::string, std::less<>>;

/// TREC qrels: `qid iter docid grade`, whitespace separated. Raises
/// ParseError with the line number on malformed lines, negative grades or
/// a pair judged twice.
Qrels parse_qrels(std::string_view text, const std::string& source = "<qrels>");
Qrels load_qrels(const std::string& path);

/// TREC run: `qid Q0 docid rank score tag`. Per query, ranks must strictly
/// increase, scores must not increase and doc ids must be unique.
Run parse_run(std::string_view text, const std::string& source = "<run>");
Run load_run(const std::string& path);

/// Renders a run with six-decimal scores; queries in key order.
std::string format_run(const Run& run, std::string_view tag);

/// TSV `query_id<TAB>query_text`.
QuerySet parse_queries(std::string_view text, const std::string& source = "<queries>");
QuerySet load_queries(const std::string& path);

std::vector<std::string> doc_ids(const std::vector<RunEntry>& entries);

}  // namespace coper::evalkit
