#pragma once

#include "coper/lexical/inverted_index.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coper::lexical {

/// Term-frequency weight ln(1 + freq). Natural log throughout.
double tf_weight(std::uint64_t freq);

/// ln(N / df). nullopt when the term is not in the index; callers treat an
/// absent term as contributing nothing. Raises EmptyIndexError when N = 0.
std::optional<double> idf(std::string_view term, const InvertedIndex& index);
double idf(TermId term, const InvertedIndex& index);

struct Bm25Params {
    double k1 = 1.5;
    double b = 0.75;
    /// Size of the candidate pool handed to the re-ranker.
    std::size_t pool = 800;

    /// Raises DomainError unless k1 > 0, 0 <= b <= 1 and pool >= 1.
    void validate() const;
};

/// Okapi BM25 with the plain ln(N/df) IDF:
///   sum_i idf(q_i) * f(q_i,D)(k1+1) / (f(q_i,D) + k1(1 - b + b|D|/avgdl))
/// Repeated query terms count once per occurrence. Unknown doc ids raise
/// LookupError.
double bm25_score(std::span<const std::string> query, std::string_view doc_id, const InvertedIndex& index,
                  const Bm25Params& params);

struct ScoredDoc {
    DocNo doc;
    std::string doc_id;
    double score;
};

/// Documents containing at least one query term, by score descending then
/// doc_id ascending, truncated to params.pool.
std::vector<ScoredDoc> bm25_topk(std::span<const std::string> query, const InvertedIndex& index,
                                 const Bm25Params& params);

struct TermWeight {
    TermId term;
    double weight;
};

/// Sparse TF-IDF vector, entries ascending by TermId, no zero weights.
class TfIdfVector {
  public:
    TfIdfVector() = default;
    explicit TfIdfVector(std::vector<TermWeight> entries);

    std::span<const TermWeight> entries() const noexcept { return m_entries; }
    bool empty() const noexcept { return m_entries.empty(); }
    double weight(TermId term) const;
    double norm() const noexcept { return m_norm; }

  private:
    std::vector<TermWeight> m_entries;
    double m_norm = 0.0;
};

/// weight(t) = tf_weight(freq of t in terms) * idf(t); terms missing from
/// the index or with zero IDF are omitted.
TfIdfVector tfidf_vector(std::span<const std::string> terms, const InvertedIndex& index);

/// Precomputed TF-IDF vectors of every indexed document.
class TfIdfModel {
  public:
    explicit TfIdfModel(const InvertedIndex& index);

    const TfIdfVector& doc_vector(DocNo doc) const { return m_vectors.at(doc); }

  private:
    std::vector<TfIdfVector> m_vectors;
};

/// a.b / (|a||b|); 0 when either norm is 0.
double cosine(const TfIdfVector& a, const TfIdfVector& b);
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace coper::lexical
