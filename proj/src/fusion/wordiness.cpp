#include "coper/fusion/wordiness.hpp"

#include "coper/common/error.hpp"

#include <algorithm>

namespace coper::fusion {

void OmegaBounds::validate() const
{
    if (!(min >= 0.0 && min <= max && max <= 1.0)) {
        throw DomainError("omega bounds must satisfy 0 <= omega_min <= omega_max <= 1");
    }
}

QueryAnalysis compute_wordiness(std::string_view query, const text::TextPipeline& pipeline, const PatternSet& patterns,
                                const OmegaBounds& bounds)
{
    bounds.validate();
    QueryAnalysis qa;
    qa.tokens = pipeline.analyze(query, &qa.normalized);
    for (const auto& t : qa.tokens) {
        if (!t.is_punct()) {
            qa.tags.push_back(*t.pos);
        }
    }
    qa.total = qa.tags.size();
    for (auto [begin, end] : patterns.find_matches(qa.tags)) {
        qa.covered += end - begin;
    }
    qa.omega = std::clamp(1.0 - qa.coverage(), bounds.min, bounds.max);
    return qa;
}

double jss(double omega, double tfidf_s, double sbert_s)
{
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw DomainError("omega must lie in [0,1]");
    }
    return omega * tfidf_s + (1.0 - omega) * sbert_s;
}

}  // namespace coper::fusion
