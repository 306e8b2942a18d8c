#include "coper/evalkit/evaluate.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <json.hpp>

#include <algorithm>

namespace coper::evalkit {

MetricsReport evaluate(const Run& run, const Qrels& qrels, const EvalOptions& options)
{
    if (options.k == 0) {
        throw PreconditionError("metric cutoff k must be >= 1");
    }
    MetricsReport report;
    report.k = options.k;
    for (const auto& [qid, entries] : run) {
        if (!qrels.contains(qid)) {
            report.warnings.push_back("query '" + qid + "' has no judgments; skipped");
        }
    }
    double asts_sum = 0.0;
    std::size_t asts_n = 0;
    for (const auto& [qid, grades] : qrels) {
        QueryMetrics m;
        m.query_id = qid;
        std::vector<std::string> ranked;
        if (auto it = run.find(qid); it != run.end()) {
            ranked = doc_ids(it->second);
        } else {
            report.warnings.push_back("query '" + qid + "' missing from run");
        }
        auto rel = relevant_set(grades);
        m.retrieved = ranked.size();
        m.relevant = rel.size();
        m.precision = precision_at_k(ranked, rel, options.k);
        m.average_precision = average_precision_at_k(ranked, rel, options.k);
        m.ndcg = ndcg_at_k(ranked, grades, options.k);
        if (options.oracle != nullptr) {
            std::string text;
            if (options.queries != nullptr) {
                if (auto q = options.queries->find(qid); q != options.queries->end()) text = q->second;
            }
            m.asts = asts(qid, text, ranked, *options.oracle, options.k);
            if (m.asts) {
                asts_sum += *m.asts;
                ++asts_n;
            }
        }
        report.mean_precision += m.precision;
        report.mean_average_precision += m.average_precision;
        report.mean_ndcg += m.ndcg;
        report.queries.push_back(std::move(m));
    }
    if (!report.queries.empty()) {
        auto n = static_cast<double>(report.queries.size());
        report.mean_precision /= n;
        report.mean_average_precision /= n;
        report.mean_ndcg /= n;
    }
    if (asts_n > 0) {
        report.mean_asts = asts_sum / static_cast<double>(asts_n);
    }
    return report;
}

std::string report_json(const MetricsReport& report)
{
    using nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json j;
    j["k"] = report.k;
    j["queries"] = ordered_json::array();
    for (const auto& q : report.queries) {
        j["queries"].push_back({{"query_id", q.query_id},
                                {"retrieved", q.retrieved},
                                {"relevant", q.relevant},
                                {"precision", q.precision},
                                {"average_precision", q.average_precision},
                                {"ndcg", q.ndcg},
                                {"asts", opt(q.asts)}});
    }
    j["mean"] = {{"precision", report.mean_precision},
                 {"average_precision", report.mean_average_precision},
                 {"ndcg", report.mean_ndcg},
                 {"asts", opt(report.mean_asts)}};
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string report_tsv(const MetricsReport& report)
{
    std::vector<std::vector<std::string>> rows;
    auto k = std::to_string(report.k);
    rows.push_back({"query_id", "P@" + k, "AP@" + k, "nDCG@" + k, "ASTS"});
    auto opt = [](const std::optional<double>& v) { return v ? format6(*v) : std::string("-"); };
    for (const auto& q : report.queries) {
        rows.push_back({q.query_id, format6(q.precision), format6(q.average_precision), format6(q.ndcg), opt(q.asts)});
    }
    rows.push_back({"mean", format6(report.mean_precision), format6(report.mean_average_precision),
                    format6(report.mean_ndcg), opt(report.mean_asts)});

    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::string out;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            out += r[c];
            if (c + 1 < r.size()) {
                out.append(width[c] - r[c].size(), ' ');
                out += '\t';
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace coper::evalkit
