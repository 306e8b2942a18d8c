#include "coper/textproc/document.hpp"

namespace coper::text {

std::vector<Token> TextPipeline::analyze(std::string_view raw, NormalizedText* normalized_out) const
{
    NormalizedText norm = normalize(raw, charmap);
    auto tokens = pos_tag(tokenize(norm), *tagger);
    mark_stopwords(tokens, stopwords);
    if (normalized_out != nullptr) {
        *normalized_out = std::move(norm);
    }
    return tokens;
}

ProcessedDocument process_document(const RawDocument& doc, const TextPipeline& pipeline)
{
    ProcessedDocument out;
    out.id = doc.id;
    out.title_tokens = pipeline.analyze(doc.title, &out.title);
    out.body_tokens = pipeline.analyze(doc.body, &out.body);
    return out;
}

std::vector<std::string> content_terms(std::span<const Token> tokens)
{
    std::vector<std::string> terms;
    terms.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!t.is_punct() && !t.stopword) {
            terms.push_back(t.surface);
        }
    }
    return terms;
}

std::vector<std::string> index_terms(const ProcessedDocument& doc)
{
    auto terms = content_terms(doc.title_tokens);
    auto body = content_terms(doc.body_tokens);
    terms.insert(terms.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
    return terms;
}

}  // namespace coper::text
