#pragma once

#include "coper/textproc/normalize.hpp"
#include "coper/textproc/pos.hpp"
#include "coper/textproc/tokenize.hpp"
#include "coper/textproc/types.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace coper::text {

/// Everything needed to turn raw text into tagged tokens.
struct TextPipeline {
    CharMap charmap;
    StopwordSet stopwords;
    std::shared_ptr<const PosTagger> tagger = std::make_shared<LexiconTagger>();

    /// normalize -> tokenize -> pos_tag -> mark_stopwords.
    std::vector<Token> analyze(std::string_view raw, NormalizedText* normalized_out = nullptr) const;
};

/// A document after normalization, tokenization, and tagging. Stopwords are
/// kept in the token lists (flagged) because keyword scoring needs them as
/// context.
struct ProcessedDocument {
    std::string id;
    NormalizedText title;
    NormalizedText body;
    std::vector<Token> title_tokens;
    std::vector<Token> body_tokens;
};

ProcessedDocument process_document(const RawDocument& doc, const TextPipeline& pipeline);

/// Surfaces of content tokens: neither punctuation nor stopwords.
std::vector<std::string> content_terms(std::span<const Token> tokens);

/// Index terms of a document: content terms of the title followed by
/// those of the body.
std::vector<std::string> index_terms(const ProcessedDocument& doc);

}  // namespace coper::text
