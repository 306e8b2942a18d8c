#include "coper/textproc/pos.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"
#include "coper/textproc/normalize.hpp"

#include <algorithm>

namespace coper::text {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void insert_by_length(std::vector<std::pair<std::string, PosTag>>& rules, std::string affix, PosTag tag)
{
    auto it = std::find_if(rules.begin(), rules.end(), [&](const auto& r) { return r.first == affix; });
    if (it != rules.end()) {
        it->second = tag;
        return;
    }
    rules.emplace_back(std::move(affix), tag);
    std::stable_sort(rules.begin(), rules.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

}  // namespace

LexiconTagger LexiconTagger::load(const std::filesystem::path& path, const CharMap& table)
{
    return parse(read_file(path), table, path.string());
}

LexiconTagger LexiconTagger::parse(std::string_view tsv, const CharMap& table, std::string_view source_name)
{
    LexiconTagger tagger;
    std::size_t line_no = 0;
    for (auto line : split(tsv, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fields = split(line, '\t');
        auto where = std::string(source_name) + ":" + std::to_string(line_no);
        if (fields.size() != 2) {
            throw ConfigError(where + ": expected surface<TAB>TAG");
        }
        auto tag = parse_pos_tag(trim(fields[1]));
        if (!tag) {
            throw ConfigError(where + ": unknown tag '" + std::string(trim(fields[1])) + "'");
        }
        auto surface = trim(fields[0]);
        if (surface.size() > 1 && surface.front() == '*') {
            tagger.add_suffix(normalize(surface.substr(1), table).str(), *tag);
        } else if (surface.size() > 1 && surface.back() == '*') {
            tagger.add_prefix(normalize(surface.substr(0, surface.size() - 1), table).str(), *tag);
        } else {
            tagger.add_word(normalize(surface, table).str(), *tag);
        }
    }
    return tagger;
}

void LexiconTagger::add_word(std::string surface, PosTag tag) { m_words[std::move(surface)] = tag; }

void LexiconTagger::add_prefix(std::string prefix, PosTag tag) { insert_by_length(m_prefixes, std::move(prefix), tag); }

void LexiconTagger::add_suffix(std::string suffix, PosTag tag) { insert_by_length(m_suffixes, std::move(suffix), tag); }

PosTag LexiconTagger::tag_word(std::string_view surface) const
{
    if (all_digits(surface)) {
        return PosTag::Num;
    }
    if (auto it = m_words.find(surface); it != m_words.end()) {
        return it->second;
    }
    for (const auto& [prefix, tag] : m_prefixes) {
        if (surface.size() > prefix.size() && surface.starts_with(prefix)) {
            return tag;
        }
    }
    for (const auto& [suffix, tag] : m_suffixes) {
        if (surface.size() > suffix.size() && surface.ends_with(suffix)) {
            return tag;
        }
    }
    return PosTag::Noun;
}

std::vector<PosTag> LexiconTagger::tag(std::span<const Token> tokens) const
{
    std::vector<PosTag> tags;
    tags.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.is_punct()) {
            tags.push_back(PosTag::Punc);
            continue;
        }
        auto cps = decode_utf8(t.surface);
        if (cps.size() == 1 && is_punctuation(cps[0])) {
            tags.push_back(PosTag::Punc);
            continue;
        }
        tags.push_back(tag_word(t.surface));
    }
    return tags;
}

std::vector<Token> pos_tag(std::span<const Token> tokens, const PosTagger& tagger)
{
    std::vector<PosTag> tags;
    try {
        tags = tagger.tag(tokens);
    } catch (const TaggingError&) {
        throw;
    } catch (const std::exception& e) {
        throw TaggingError(std::string("tagger failed: ") + e.what(), tokens.empty() ? "" : tokens.front().surface);
    }
    if (tags.size() != tokens.size()) {
        auto bad = std::min(tags.size(), tokens.size());
        throw TaggingError("tagger returned " + std::to_string(tags.size()) + " tags for " +
                               std::to_string(tokens.size()) + " tokens",
                           bad < tokens.size() ? tokens[bad].surface : std::string());
    }
    std::vector<Token> out(tokens.begin(), tokens.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].pos = tags[i];
    }
    return out;
}

}  // namespace coper::text
