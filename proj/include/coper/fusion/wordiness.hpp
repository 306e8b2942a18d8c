#pragma once

#include "coper/fusion/pattern.hpp"
#include "coper/textproc/document.hpp"

#include <string_view>
#include <vector>

namespace coper::fusion {

struct OmegaBounds {
    double min = 0.1;
    double max = 0.9;

    /// DomainError unless 0 <= min <= max <= 1.
    void validate() const;
};

struct QueryAnalysis {
    text::NormalizedText normalized;
    std::vector<text::Token> tokens;
    /// Tags with punctuation removed; this is what patterns see.
    std::vector<text::PosTag> tags;
    std::size_t covered = 0;
    std::size_t total = 0;
    double omega = 0.0;

    double coverage() const { return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total); }
};

/// omega = clamp(1 - covered/total, min, max): sentence-like queries lean on
/// the semantic score, keyword bags on TF-IDF.
QueryAnalysis compute_wordiness(std::string_view query, const text::TextPipeline& pipeline, const PatternSet& patterns,
                                const OmegaBounds& bounds = {});

/// Joint similarity omega * tfidf_s + (1 - omega) * sbert_s. DomainError
/// unless 0 <= omega <= 1.
double jss(double omega, double tfidf_s, double sbert_s);

}  // namespace coper::fusion
