#include "coper/keywords/yake.hpp"

#include "coper/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace coper::keywords {

namespace {

bool ends_sentence(const text::Token& t)
{
    static const std::set<std::string, std::less<>> marks{".", "!", "?", "؟", ";", "؛", "…"};
    return t.is_punct() && marks.contains(t.surface);
}

struct Accumulator {
    std::uint32_t tf = 0;
    std::size_t first_sentence = 0;
    std::set<std::size_t> sentences;
    std::set<std::string, std::less<>> left, right;
    std::uint32_t left_total = 0, right_total = 0;
};

}  // namespace

std::vector<std::size_t> sentence_ids(std::span<const text::Token> tokens)
{
    std::vector<std::size_t> ids;
    ids.reserve(tokens.size());
    std::size_t s = 0;
    bool has_word = false;
    bool closed = false;
    for (const auto& t : tokens) {
        if (!t.is_punct()) {
            if (closed && has_word) {
                ++s;
            }
            closed = false;
            has_word = true;
        }
        ids.push_back(s);
        if (ends_sentence(t)) {
            closed = true;
        }
    }
    return ids;
}

TermScores score_terms(std::span<const text::Token> tokens)
{
    auto sid = sentence_ids(tokens);
    std::unordered_map<std::string, Accumulator, text::StringHash, std::equal_to<>> acc;
    std::size_t sentences = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.is_punct()) {
            continue;
        }
        sentences = sid[i] + 1;
        if (t.stopword) {
            continue;
        }
        auto [it, fresh] = acc.try_emplace(t.surface);
        auto& a = it->second;
        if (fresh) {
            a.first_sentence = sid[i];
        }
        ++a.tf;
        a.sentences.insert(sid[i]);
        if (i > 0 && !tokens[i - 1].is_punct()) {
            ++a.left_total;
            a.left.insert(tokens[i - 1].surface);
        }
        if (i + 1 < tokens.size() && !tokens[i + 1].is_punct()) {
            ++a.right_total;
            a.right.insert(tokens[i + 1].surface);
        }
    }
    TermScores out;
    if (acc.empty()) {
        return out;
    }

    double n = static_cast<double>(acc.size());
    double mean = 0.0;
    std::uint32_t max_tf = 0;
    for (const auto& [term, a] : acc) {
        mean += a.tf;
        max_tf = std::max(max_tf, a.tf);
    }
    mean /= n;
    double var = 0.0;
    for (const auto& [term, a] : acc) {
        var += (a.tf - mean) * (a.tf - mean);
    }
    double stddev = std::sqrt(var / n);

    for (const auto& [term, a] : acc) {
        TermFeatures f;
        f.tf = a.tf;
        f.first_sentence = a.first_sentence;
        f.position = std::log(std::log(3.0 + static_cast<double>(a.first_sentence)));
        f.frequency = a.tf / (mean + stddev);
        double dl = a.left_total ? static_cast<double>(a.left.size()) / a.left_total : 0.0;
        double dr = a.right_total ? static_cast<double>(a.right.size()) / a.right_total : 0.0;
        f.relatedness = 1.0 + (dl + dr) * a.tf / max_tf;
        f.spread = static_cast<double>(a.sentences.size()) / static_cast<double>(sentences);
        constexpr double casing = 0.0;
        double s = f.position * f.relatedness / (casing + f.frequency / f.relatedness + f.spread / f.relatedness);
        out.emplace(term, TermScore{term, s, f});
    }
    return out;
}

TermScores score_terms(const text::ProcessedDocument& doc) { return score_terms(doc.body_tokens); }

std::string CandidatePhrase::text() const
{
    std::string s;
    for (const auto& t : tokens) {
        if (!s.empty()) {
            s += ' ';
        }
        s += t.surface;
    }
    return s;
}

std::vector<CandidatePhrase> generate_candidates(std::span<const text::Token> tokens, std::size_t max_n)
{
    std::vector<CandidatePhrase> out;
    std::unordered_map<std::string, std::size_t, text::StringHash, std::equal_to<>> seen;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t len = 1; len <= max_n && i + len <= tokens.size(); ++len) {
            const auto& last = tokens[i + len - 1];
            if (last.is_punct()) {
                break;
            }
            if (len > 1 && last.start > tokens[i + len - 2].end + 1) {
                break;
            }
            if (tokens[i].stopword || tokens[i].is_punct()) {
                break;
            }
            if (last.stopword) {
                continue;
            }
            CandidatePhrase c;
            c.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                            tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
            auto key = c.text();
            auto [it, fresh] = seen.try_emplace(key, out.size());
            if (fresh) {
                c.tf = 1;
                out.push_back(std::move(c));
            } else {
                ++out[it->second].tf;
            }
        }
    }
    return out;
}

double score_keyword(const CandidatePhrase& kw, const TermScores& terms)
{
    if (kw.tf == 0) {
        throw PreconditionError("keyword tf must be >= 1: " + kw.text());
    }
    double prod = 1.0;
    double sum = 0.0;
    for (const auto& t : kw.tokens) {
        if (t.stopword) {
            continue;
        }
        auto it = terms.find(t.surface);
        if (it == terms.end()) {
            throw InternalError("no term score for '" + t.surface + "'");
        }
        prod *= it->second.score;
        sum += it->second.score;
    }
    return prod / (kw.tf * (1.0 + sum));
}

}  // namespace coper::keywords
