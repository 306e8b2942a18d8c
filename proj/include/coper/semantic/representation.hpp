#pragma once

#include "coper/semantic/provider.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coper::semantic {

inline constexpr double kTitleWeight = 1.1;

/// L2-normalized copy; the zero vector stays zero.
std::vector<double> unit(std::vector<double> v);

/// Unit embedding of the title, zero for an empty title. Provider failures
/// are rethrown as EmbeddingError carrying `doc_id`.
std::vector<double> embed_title(std::string_view title, const EmbeddingProvider& p, std::string_view doc_id = {});

/// Unit embedding of the phrases passed as one ordered segment list; zero
/// for an empty list.
std::vector<double> embed_noun_phrases(std::span<const std::string> nps, const EmbeddingProvider& p,
                                       std::string_view doc_id = {});

struct DocSemanticVector {
    std::string doc_id;
    std::vector<double> vec;
};

/// [title_weight * title_vec ; np_vec]. ShapeError unless both halves
/// have the same length.
DocSemanticVector build_doc_vector(std::string doc_id, std::span<const double> title_vec,
                                   std::span<const double> np_vec, double title_weight = kTitleWeight);

/// [q ; q] with q the unit embedding of the query; zero for an empty query.
std::vector<double> query_vector(std::string_view query, const EmbeddingProvider& p);

}  // namespace coper::semantic
