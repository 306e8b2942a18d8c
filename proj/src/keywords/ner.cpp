#include "coper/keywords/ner.hpp"

#include "coper/common/util.hpp"

namespace coper::keywords {

namespace {

// Unit separator; cannot occur in normalized text.
constexpr char kJoin = '\x1f';

std::string key_of(std::span<const text::Token> tokens)
{
    std::string key;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) {
            key += kJoin;
        }
        key += tokens[i].surface;
    }
    return key;
}

}  // namespace

Gazetteer Gazetteer::load(const std::filesystem::path& path, std::string label, const text::CharMap& table)
{
    Gazetteer g(std::move(label));
    const std::string contents = read_file(path);
    for (auto line : split(contents, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        g.add(text::normalize(line, table));
    }
    return g;
}

void Gazetteer::add(const text::NormalizedText& entry)
{
    auto tokens = text::tokenize(entry);
    if (tokens.empty()) {
        return;
    }
    m_entries.insert(key_of(tokens));
    m_longest = std::max(m_longest, tokens.size());
}

bool Gazetteer::contains(std::span<const text::Token> tokens) const
{
    return !tokens.empty() && tokens.size() <= m_longest && m_entries.contains(key_of(tokens));
}

std::vector<bool> GazetteerRecognizer::entity_mask(std::span<const text::Token> tokens) const
{
    std::size_t longest = 0;
    for (const auto& g : m_gazetteers) {
        longest = std::max(longest, g.longest());
    }
    std::vector<bool> mask(tokens.size(), false);
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t match = 0;
        for (std::size_t len = std::min(longest, tokens.size() - i); len >= 1 && match == 0; --len) {
            for (const auto& g : m_gazetteers) {
                if (g.contains(tokens.subspan(i, len))) {
                    match = len;
                    break;
                }
            }
        }
        if (match == 0) {
            ++i;
            continue;
        }
        for (std::size_t j = i; j < i + match; ++j) {
            mask[j] = true;
        }
        i += match;
    }
    return mask;
}

std::vector<text::Token> filter_named_entities(std::span<const text::Token> tokens, const EntityRecognizer& ner)
{
    auto mask = ner.entity_mask(tokens);
    std::vector<text::Token> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!mask.at(i)) {
            out.push_back(tokens[i]);
        }
    }
    return out;
}

}  // namespace coper::keywords
