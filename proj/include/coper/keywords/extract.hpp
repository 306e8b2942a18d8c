#pragma once

#include "coper/keywords/ner.hpp"
#include "coper/keywords/yake.hpp"
#include "coper/textproc/document.hpp"

#include <span>
#include <string>
#include <vector>

namespace coper::keywords {

struct NounPhrase {
    std::vector<text::Token> tokens;
    std::string text;
    /// The keyword this phrase was expanded from, and its score.
    std::string keyword;
    double score = 0.0;
};

/// True when every token of `kw` is a non-stopword ADJ, NOUN or NUM and at
/// least one is a NOUN, i.e. the keyword can sit inside a noun phrase.
bool inside_noun_chunk(const CandidatePhrase& kw);

/// Grows the first occurrence of `kw` in `tokens` over neighbouring
/// ADJ/NOUN/NUM non-stopword tokens, on each side where the keyword itself
/// ends in one of those tags. Growth stops at gaps left by removed tokens.
/// Adjectives may trail the noun (Persian noun phrases are head-initial).
/// Raises InternalError when `kw` does not occur.
NounPhrase expand_to_noun_phrase(const CandidatePhrase& kw, std::span<const text::Token> tokens);

/// Expands within the document body.
NounPhrase expand_to_noun_phrase(const CandidatePhrase& kw, const text::ProcessedDocument& doc);

/// Keyword phrases of an analysed document body: entity filtering,
/// candidate generation, scoring, the k best candidates that fit inside a
/// noun phrase expanded over the filtered tokens, duplicates dropped
/// (first kept). Ties in score go to the earlier candidate. k = 0 raises
/// PreconditionError.
std::vector<NounPhrase> extract_keywords(const text::ProcessedDocument& doc, std::size_t k, const EntityRecognizer& ner,
                                         std::size_t max_ngram = 3);

/// Runs the text pipeline over the body of `doc` first.
std::vector<NounPhrase> extract_keywords(const text::RawDocument& doc, std::size_t k,
                                         const text::TextPipeline& pipeline, const EntityRecognizer& ner,
                                         std::size_t max_ngram = 3);

}  // namespace coper::keywords
