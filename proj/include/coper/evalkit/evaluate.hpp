#pragma once

#include "coper/evalkit/metrics.hpp"
#include "coper/evalkit/trec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coper::evalkit {

struct QueryMetrics {
    std::string query_id;
    std::size_t retrieved = 0;
    std::size_t relevant = 0;
    double precision = 0.0;
    double average_precision = 0.0;
    double ndcg = 0.0;
    std::optional<double> asts;
};

struct MetricsReport {
    std::size_t k = 10;
    std::vector<QueryMetrics> queries;  // sorted by query_id
    double mean_precision = 0.0;
    double mean_average_precision = 0.0;
    double mean_ndcg = 0.0;
    std::optional<double> mean_asts;
    std::vector<std::string> warnings;
};

struct EvalOptions {
    std::size_t k = 10;
    const StsOracle* oracle = nullptr;
    const QuerySet* queries = nullptr;  // query texts handed to the oracle
};

/// Evaluates every query of `qrels`. Run queries without judgments are
/// skipped with a warning; judged queries absent from the run score as
/// empty result lists. Means are unweighted over the judged queries; the
/// ASTS mean covers the queries where ASTS is defined.
MetricsReport evaluate(const Run& run, const Qrels& qrels, const EvalOptions& options = {});

std::string report_json(const MetricsReport& report);

/// Aligned table, one row per query plus a closing "mean" row.
std::string report_tsv(const MetricsReport& report);

}  // namespace coper::evalkit
