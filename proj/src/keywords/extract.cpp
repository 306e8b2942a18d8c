#include "coper/keywords/extract.hpp"

#include "coper/common/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace coper::keywords {

namespace {

bool chunkable(const text::Token& t)
{
    return !t.stopword && (t.pos == text::PosTag::Adj || t.pos == text::PosTag::Noun || t.pos == text::PosTag::Num);
}

bool adjacent(const text::Token& left, const text::Token& right) { return right.start <= left.end + 1; }

std::optional<std::size_t> find_span(std::span<const text::Token> tokens, std::span<const text::Token> needle)
{
    if (needle.empty() || needle.size() > tokens.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i + needle.size() <= tokens.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size() && hit; ++j) {
            hit = tokens[i + j].surface == needle[j].surface;
        }
        if (hit) {
            return i;
        }
    }
    return std::nullopt;
}

}  // namespace

bool inside_noun_chunk(const CandidatePhrase& kw)
{
    bool noun = false;
    for (const auto& t : kw.tokens) {
        if (!chunkable(t)) {
            return false;
        }
        noun = noun || t.pos == text::PosTag::Noun;
    }
    return noun;
}

NounPhrase expand_to_noun_phrase(const CandidatePhrase& kw, std::span<const text::Token> tokens)
{
    auto at = find_span(tokens, kw.tokens);
    if (!at) {
        throw InternalError("keyword not found in document: " + kw.text());
    }
    std::size_t begin = *at;
    std::size_t kw_end = begin + kw.n();
    std::size_t end = kw_end;
    if (chunkable(tokens[begin])) {
        while (begin > 0 && chunkable(tokens[begin - 1]) && adjacent(tokens[begin - 1], tokens[begin])) {
            --begin;
        }
    }
    if (chunkable(tokens[kw_end - 1])) {
        while (end < tokens.size() && chunkable(tokens[end]) && adjacent(tokens[end - 1], tokens[end])) {
            ++end;
        }
    }

    NounPhrase np;
    np.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                     tokens.begin() + static_cast<std::ptrdiff_t>(end));
    for (const auto& t : np.tokens) {
        if (!np.text.empty()) {
            np.text += ' ';
        }
        np.text += t.surface;
    }
    np.keyword = kw.text();
    return np;
}

NounPhrase expand_to_noun_phrase(const CandidatePhrase& kw, const text::ProcessedDocument& doc)
{
    return expand_to_noun_phrase(kw, doc.body_tokens);
}

std::vector<NounPhrase> extract_keywords(const text::ProcessedDocument& doc, std::size_t k, const EntityRecognizer& ner,
                                         std::size_t max_ngram)
{
    if (k == 0) {
        throw PreconditionError("keyword count k must be >= 1");
    }
    auto terms = score_terms(doc);
    auto kept = filter_named_entities(doc.body_tokens, ner);
    auto candidates = generate_candidates(kept, max_ngram);

    std::vector<double> scores;
    std::vector<std::size_t> order;
    scores.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        scores.push_back(score_keyword(candidates[i], terms));
        if (inside_noun_chunk(candidates[i])) {
            order.push_back(i);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    order.resize(std::min(k, order.size()));

    std::vector<NounPhrase> out;
    std::unordered_set<std::string> seen;
    for (auto i : order) {
        auto np = expand_to_noun_phrase(candidates[i], kept);
        np.score = scores[i];
        if (seen.insert(np.text).second) {
            out.push_back(std::move(np));
        }
    }
    return out;
}

std::vector<NounPhrase> extract_keywords(const text::RawDocument& doc, std::size_t k,
                                         const text::TextPipeline& pipeline, const EntityRecognizer& ner,
                                         std::size_t max_ngram)
{
    text::ProcessedDocument processed;
    processed.id = doc.id;
    processed.body_tokens = pipeline.analyze(doc.body, &processed.body);
    return extract_keywords(processed, k, ner, max_ngram);
}

}  // namespace coper::keywords
