#pragma once

#include "coper/fusion/pattern.hpp"
#include "coper/fusion/wordiness.hpp"
#include "coper/lexical/inverted_index.hpp"
#include "coper/lexical/scoring.hpp"
#include "coper/semantic/provider.hpp"
#include "coper/semantic/vector_index.hpp"
#include "coper/textproc/document.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coper::fusion {

struct RankedResult {
    std::string doc_id;
    std::size_t rank = 0;
    double bm25 = 0.0;
    double tfidf_sim = 0.0;
    double sem_sim = 0.0;
    double omega = 0.0;
    double jss = 0.0;
};

struct SearchParams {
    lexical::Bm25Params bm25;
    OmegaBounds omega;
};

/// Everything a search needs. The lexical index and the vector index must
/// come from the same corpus snapshot.
struct EngineParts {
    std::shared_ptr<const text::TextPipeline> pipeline;
    std::shared_ptr<const PatternSet> patterns;
    std::shared_ptr<const lexical::InvertedIndex> lexical;
    std::shared_ptr<const semantic::VectorIndex> vectors;
    Snapshot vectors_snapshot;
    std::shared_ptr<const semantic::EmbeddingProvider> provider;
};

/// Two-stage retrieval: BM25 candidate pool, then re-ranking of the pool by
/// jss over TF-IDF cosine (title + body) and semantic cosine. Immutable
/// after construction; search() may run concurrently.
class SearchEngine {
  public:
    /// Raises ConsistencyError when the indexes disagree on the snapshot or
    /// on the document set, ShapeError when the provider dimension does not
    /// fit the stored vectors.
    SearchEngine(EngineParts parts, SearchParams params);

    /// Top k results. `omega_override` replaces the wordiness estimate and
    /// must lie in [0,1] (DomainError otherwise); k = 0 raises
    /// PreconditionError.
    std::vector<RankedResult> search(std::string_view query, std::size_t k,
                                     std::optional<double> omega_override = std::nullopt) const;

    QueryAnalysis analyze(std::string_view query) const;

    const lexical::InvertedIndex& lexical_index() const noexcept { return *m_parts.lexical; }
    const semantic::VectorIndex& vector_index() const noexcept { return *m_parts.vectors; }
    const lexical::TfIdfModel& tfidf_model() const noexcept { return m_tfidf; }
    const SearchParams& params() const noexcept { return m_params; }
    const Snapshot& snapshot() const noexcept { return m_parts.lexical->snapshot(); }

  private:
    EngineParts m_parts;
    SearchParams m_params;
    lexical::TfIdfModel m_tfidf;
    std::vector<const semantic::DocSemanticVector*> m_vec_by_doc;
};

}  // namespace coper::fusion
