#include "coper/fusion/search.hpp"

#include "coper/common/error.hpp"

#include <algorithm>

namespace coper::fusion {

SearchEngine::SearchEngine(EngineParts parts, SearchParams params)
    : m_parts(std::move(parts)), m_params(params), m_tfidf(*m_parts.lexical)
{
    if (!m_parts.pipeline || !m_parts.patterns || !m_parts.lexical || !m_parts.vectors || !m_parts.provider) {
        throw InternalError("search engine constructed with missing parts");
    }
    m_params.bm25.validate();
    m_params.omega.validate();
    const auto& lex = *m_parts.lexical;
    const auto& vec = *m_parts.vectors;
    if (!(lex.snapshot() == m_parts.vectors_snapshot)) {
        throw ConsistencyError("lexical index snapshot " + lex.snapshot().hex() +
                               " does not match embedding snapshot " + m_parts.vectors_snapshot.hex());
    }
    if (vec.size() != lex.num_docs()) {
        throw ConsistencyError("lexical index has " + std::to_string(lex.num_docs()) + " documents, vector index " +
                               std::to_string(vec.size()));
    }
    if (vec.size() > 0 && vec.dim() != 2 * m_parts.provider->dim()) {
        throw ShapeError("stored vectors have dimension " + std::to_string(vec.dim()) + ", provider yields " +
                         std::to_string(2 * m_parts.provider->dim()));
    }
    m_vec_by_doc.reserve(lex.num_docs());
    for (lexical::DocNo d = 0; d < lex.num_docs(); ++d) {
        const auto* v = vec.find(lex.doc_id(d));
        if (v == nullptr) {
            throw ConsistencyError("document '" + lex.doc_id(d) + "' has no stored vector");
        }
        m_vec_by_doc.push_back(v);
    }
}

QueryAnalysis SearchEngine::analyze(std::string_view query) const
{
    return compute_wordiness(query, *m_parts.pipeline, *m_parts.patterns, m_params.omega);
}

std::vector<RankedResult> SearchEngine::search(std::string_view query, std::size_t k,
                                               std::optional<double> omega_override) const
{
    if (k == 0) {
        throw PreconditionError("k must be >= 1");
    }
    if (omega_override && !(*omega_override >= 0.0 && *omega_override <= 1.0)) {
        throw DomainError("omega must lie in [0,1]");
    }
    auto qa = analyze(query);
    const double omega = omega_override.value_or(qa.omega);
    const auto terms = text::content_terms(qa.tokens);
    const auto& lex = *m_parts.lexical;

    auto pool = lexical::bm25_topk(terms, lex, m_params.bm25);
    if (pool.empty()) {
        return {};
    }
    auto q_tfidf = lexical::tfidf_vector(terms, lex);
    auto q_sem = semantic::query_vector(qa.normalized.view(), *m_parts.provider);

    std::vector<RankedResult> results;
    results.reserve(pool.size());
    for (const auto& c : pool) {
        RankedResult r;
        r.doc_id = c.doc_id;
        r.bm25 = c.score;
        r.tfidf_sim = lexical::cosine(q_tfidf, m_tfidf.doc_vector(c.doc));
        r.sem_sim = lexical::cosine(q_sem, m_vec_by_doc[c.doc]->vec);
        r.omega = omega;
        r.jss = jss(omega, r.tfidf_sim, r.sem_sim);
        results.push_back(std::move(r));
    }
    auto keep = std::min(k, results.size());
    std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep), results.end(),
                      [](const RankedResult& a, const RankedResult& b) {
                          return a.jss != b.jss ? a.jss > b.jss : a.doc_id < b.doc_id;
                      });
    results.resize(keep);
    for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].rank = i + 1;
    }
    return results;
}

}  // namespace coper::fusion
