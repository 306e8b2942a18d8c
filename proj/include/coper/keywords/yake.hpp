#pragma once

#include "coper/textproc/document.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace coper::keywords {

/// Statistical features of one term, as used by the YAKE-style scorer.
struct TermFeatures {
    std::uint32_t tf = 0;
    /// Index of the first sentence the term occurs in (0-based).
    std::size_t first_sentence = 0;
    double position = 0.0;  // ln(ln(3 + first_sentence))
    double frequency = 0.0; // tf / (mean_tf + stddev_tf)
    double relatedness = 0.0; // 1 + (DL + DR) * tf / max_tf
    double spread = 0.0;    // sentences containing the term / sentence count
};

struct TermScore {
    std::string term;
    /// Lower is more important.
    double score = 0.0;
    TermFeatures features;
};

using TermScores = std::unordered_map<std::string, TermScore, text::StringHash, std::equal_to<>>;

/// Sentence index of every token; sentences end after ". ! ? ؟ ; ؛ …".
/// Punctuation tokens carry the index of the sentence they close.
std::vector<std::size_t> sentence_ids(std::span<const text::Token> tokens);

/// Scores every non-stopword, non-punctuation term of `tokens`:
///
///   S(t) = Pos * Rel / (Case + Freq / Rel + Spread / Rel)
///
/// Case is fixed at 0 (Persian has no letter case). Co-occurrence for
/// DL/DR looks one token left/right inside the same sentence; stopwords
/// count as neighbours, punctuation does not. DL is the number of distinct
/// left neighbours over the number of left co-occurrences (0 if none).
/// Mean and standard deviation of tf are taken over the scored terms.
TermScores score_terms(std::span<const text::Token> tokens);

/// Scores the body of `doc`.
TermScores score_terms(const text::ProcessedDocument& doc);

struct CandidatePhrase {
    /// Tokens of the first occurrence.
    std::vector<text::Token> tokens;
    std::uint32_t tf = 0;

    std::size_t n() const noexcept { return tokens.size(); }
    std::string text() const;
};

/// Contiguous 1..max_n grams with no punctuation, not starting or ending
/// with a stopword, deduplicated by text with occurrences counted. Tokens
/// are contiguous when at most one byte separates them in the source, so
/// gaps left by removed tokens break phrases. Output follows first
/// occurrence.
std::vector<CandidatePhrase> generate_candidates(std::span<const text::Token> tokens, std::size_t max_n = 3);

/// S(kw) = prod S(w) / (TF(kw) * (1 + sum S(w))) over the non-stopword
/// tokens of kw. tf = 0 raises PreconditionError; a token without a score
/// raises InternalError.
double score_keyword(const CandidatePhrase& kw, const TermScores& terms);

}  // namespace coper::keywords
