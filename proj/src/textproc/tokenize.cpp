#include "coper/textproc/tokenize.hpp"

#include "coper/common/util.hpp"
#include "coper/textproc/normalize.hpp"

#include <unicode/utf8.h>

namespace coper::text {

std::vector<Token> tokenize(const NormalizedText& text)
{
    std::vector<Token> tokens;
    const std::string& s = text.str();
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    auto length = static_cast<int32_t>(s.size());

    std::size_t word_start = 0;
    bool in_word = false;
    auto flush = [&](std::size_t end) {
        if (in_word) {
            tokens.push_back(Token{s.substr(word_start, end - word_start), word_start, end, std::nullopt, false});
            in_word = false;
        }
    };

    int32_t i = 0;
    while (i < length) {
        auto at = static_cast<std::size_t>(i);
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        auto next = static_cast<std::size_t>(i);
        auto cp = static_cast<char32_t>(c);
        if (is_space(cp)) {
            flush(at);
        } else if (is_punctuation(cp)) {
            flush(at);
            tokens.push_back(Token{s.substr(at, next - at), at, next, PosTag::Punc, false});
        } else if (!in_word) {
            in_word = true;
            word_start = at;
        }
    }
    flush(s.size());
    return tokens;
}

StopwordSet::StopwordSet(std::initializer_list<std::string_view> words)
{
    for (auto w : words) {
        m_words.emplace(w);
    }
}

StopwordSet StopwordSet::load(const std::filesystem::path& path, const CharMap& table)
{
    StopwordSet set;
    const std::string contents = read_file(path);
    for (auto line : split(contents, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        set.m_words.insert(normalize(line, table).str());
    }
    return set;
}

std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopwordSet& stopwords)
{
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stopwords.contains(t.surface)) {
            out.push_back(t);
        }
    }
    return out;
}

void mark_stopwords(std::span<Token> tokens, const StopwordSet& stopwords)
{
    for (auto& t : tokens) {
        t.stopword = !t.is_punct() && stopwords.contains(t.surface);
    }
}

}  // namespace coper::text
