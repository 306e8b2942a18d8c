#include "coper/lexical/scoring.hpp"

#include "coper/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace coper::lexical {

namespace {

double bm25_term(double idf_value, double freq, double doc_len, double avgdl, const Bm25Params& p)
{
    double norm = p.k1 * (1.0 - p.b + p.b * doc_len / avgdl);
    return idf_value * (freq * (p.k1 + 1.0)) / (freq + norm);
}

std::uint32_t tf_in_doc(const InvertedIndex& index, TermId term, DocNo doc)
{
    auto list = index.postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), doc, [](const Posting& p, DocNo d) { return p.doc < d; });
    return (it != list.end() && it->doc == doc) ? it->tf : 0;
}

}  // namespace

double tf_weight(std::uint64_t freq) { return std::log1p(static_cast<double>(freq)); }

double idf(TermId term, const InvertedIndex& index)
{
    return std::log(static_cast<double>(index.num_docs()) / static_cast<double>(index.df(term)));
}

std::optional<double> idf(std::string_view term, const InvertedIndex& index)
{
    if (index.num_docs() == 0) {
        throw EmptyIndexError("idf requested on an empty index");
    }
    auto id = index.find_term(term);
    if (!id) {
        return std::nullopt;
    }
    return idf(*id, index);
}

void Bm25Params::validate() const
{
    if (!(k1 > 0.0)) {
        throw DomainError("bm25 k1 must be > 0");
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw DomainError("bm25 b must lie in [0,1]");
    }
    if (pool < 1) {
        throw DomainError("candidate pool must be >= 1");
    }
}

double bm25_score(std::span<const std::string> query, std::string_view doc_id, const InvertedIndex& index,
                  const Bm25Params& params)
{
    auto doc = index.find_doc(doc_id);
    if (!doc) {
        throw LookupError("unknown doc_id: " + std::string(doc_id));
    }
    double score = 0.0;
    for (const auto& q : query) {
        auto term = index.find_term(q);
        if (!term) {
            continue;
        }
        auto f = tf_in_doc(index, *term, *doc);
        if (f == 0) {
            continue;
        }
        score += bm25_term(idf(*term, index), f, index.doc_len(*doc), index.avgdl(), params);
    }
    return score;
}

std::vector<ScoredDoc> bm25_topk(std::span<const std::string> query, const InvertedIndex& index,
                                 const Bm25Params& params)
{
    params.validate();
    if (index.num_docs() == 0) {
        return {};
    }
    // Term-at-a-time accumulation in query order, matching bm25_score's
    // summation order exactly.
    std::vector<double> acc(index.num_docs(), 0.0);
    std::vector<char> touched(index.num_docs(), 0);
    std::vector<DocNo> hits;
    for (const auto& q : query) {
        auto term = index.find_term(q);
        if (!term) {
            continue;
        }
        double w = idf(*term, index);
        for (const auto& p : index.postings(*term)) {
            acc[p.doc] += bm25_term(w, p.tf, index.doc_len(p.doc), index.avgdl(), params);
            if (!touched[p.doc]) {
                touched[p.doc] = 1;
                hits.push_back(p.doc);
            }
        }
    }
    auto better = [&](DocNo a, DocNo b) { return acc[a] != acc[b] ? acc[a] > acc[b] : a < b; };
    auto keep = std::min(hits.size(), params.pool);
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(), better);
    hits.resize(keep);

    std::vector<ScoredDoc> out;
    out.reserve(hits.size());
    for (auto d : hits) {
        out.push_back(ScoredDoc{d, index.doc_id(d), acc[d]});
    }
    return out;
}

TfIdfVector::TfIdfVector(std::vector<TermWeight> entries) : m_entries(std::move(entries))
{
    std::erase_if(m_entries, [](const TermWeight& e) { return e.weight == 0.0; });
    std::sort(m_entries.begin(), m_entries.end(), [](const TermWeight& a, const TermWeight& b) { return a.term < b.term; });
    double sq = 0.0;
    for (const auto& e : m_entries) {
        sq += e.weight * e.weight;
    }
    m_norm = std::sqrt(sq);
}

double TfIdfVector::weight(TermId term) const
{
    auto it = std::lower_bound(m_entries.begin(), m_entries.end(), term,
                               [](const TermWeight& e, TermId t) { return e.term < t; });
    return (it != m_entries.end() && it->term == term) ? it->weight : 0.0;
}

TfIdfVector tfidf_vector(std::span<const std::string> terms, const InvertedIndex& index)
{
    std::map<TermId, std::uint64_t> freq;
    for (const auto& t : terms) {
        if (auto id = index.find_term(t)) {
            ++freq[*id];
        }
    }
    std::vector<TermWeight> entries;
    entries.reserve(freq.size());
    for (const auto& [term, f] : freq) {
        entries.push_back(TermWeight{term, tf_weight(f) * idf(term, index)});
    }
    return TfIdfVector(std::move(entries));
}

TfIdfModel::TfIdfModel(const InvertedIndex& index)
{
    m_vectors.reserve(index.num_docs());
    for (DocNo d = 0; d < index.num_docs(); ++d) {
        std::vector<TermWeight> entries;
        for (const auto& tf : index.doc_terms(d)) {
            entries.push_back(TermWeight{tf.term, tf_weight(tf.tf) * idf(tf.term, index)});
        }
        m_vectors.emplace_back(std::move(entries));
    }
}

double cosine(const TfIdfVector& a, const TfIdfVector& b)
{
    if (a.norm() == 0.0 || b.norm() == 0.0) {
        return 0.0;
    }
    auto x = a.entries();
    auto y = b.entries();
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].term < y[j].term) {
            ++i;
        } else if (y[j].term < x[i].term) {
            ++j;
        } else {
            dot += x[i++].weight * y[j++].weight;
        }
    }
    return std::clamp(dot / (a.norm() * b.norm()), -1.0, 1.0);
}

double cosine(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw ShapeError("cosine of vectors with different dimensions");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

}  // namespace coper::lexical
