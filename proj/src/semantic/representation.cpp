#include "coper/semantic/representation.hpp"

#include "coper/common/error.hpp"

#include <cmath>

namespace coper::semantic {

namespace {

std::vector<double> checked_embed(std::span<const std::string> segments, const EmbeddingProvider& p,
                                  std::string_view doc_id)
{
    std::vector<double> v;
    try {
        v = p.embed(segments);
    } catch (const EmbeddingError& e) {
        throw EmbeddingError(e.what(), std::string(doc_id));
    } catch (const std::exception& e) {
        throw EmbeddingError(std::string("embedding provider failed: ") + e.what(), std::string(doc_id));
    }
    if (v.size() != p.dim()) {
        throw EmbeddingError("provider returned " + std::to_string(v.size()) + " values, expected " +
                                 std::to_string(p.dim()),
                             std::string(doc_id));
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw EmbeddingError("provider returned a non-finite value", std::string(doc_id));
        }
    }
    return unit(std::move(v));
}

}  // namespace

std::vector<double> unit(std::vector<double> v)
{
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    if (sq == 0.0) {
        return v;
    }
    double norm = std::sqrt(sq);
    for (double& x : v) {
        x /= norm;
    }
    return v;
}

std::vector<double> embed_title(std::string_view title, const EmbeddingProvider& p, std::string_view doc_id)
{
    if (title.empty()) {
        return std::vector<double>(p.dim(), 0.0);
    }
    std::string segment(title);
    return checked_embed({&segment, 1}, p, doc_id);
}

std::vector<double> embed_noun_phrases(std::span<const std::string> nps, const EmbeddingProvider& p,
                                       std::string_view doc_id)
{
    if (nps.empty()) {
        return std::vector<double>(p.dim(), 0.0);
    }
    return checked_embed(nps, p, doc_id);
}

DocSemanticVector build_doc_vector(std::string doc_id, std::span<const double> title_vec,
                                   std::span<const double> np_vec, double title_weight)
{
    if (title_vec.size() != np_vec.size()) {
        throw ShapeError("title and noun-phrase vectors differ in dimension (" + std::to_string(title_vec.size()) +
                         " vs " + std::to_string(np_vec.size()) + ")");
    }
    DocSemanticVector out{std::move(doc_id), {}};
    out.vec.reserve(2 * title_vec.size());
    for (double x : title_vec) {
        out.vec.push_back(title_weight * x);
    }
    out.vec.insert(out.vec.end(), np_vec.begin(), np_vec.end());
    return out;
}

std::vector<double> query_vector(std::string_view query, const EmbeddingProvider& p)
{
    auto q = embed_title(query, p);
    std::vector<double> out(q);
    out.insert(out.end(), q.begin(), q.end());
    return out;
}

}  // namespace coper::semantic
