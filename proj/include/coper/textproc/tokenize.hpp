#pragma once

#include "coper/textproc/types.hpp"

#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace coper::text {

class CharMap;

/// Splits on whitespace and punctuation. Every punctuation or symbol
/// character becomes its own token pre-tagged PUNC; ZWNJ-joined compounds
/// stay one token.
std::vector<Token> tokenize(const NormalizedText& text);

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

class StopwordSet {
  public:
    StopwordSet() = default;
    StopwordSet(std::initializer_list<std::string_view> words);

    /// One word per line, normalized through `table` so that entries match
    /// normalized token surfaces. A missing file raises ConfigError.
    static StopwordSet load(const std::filesystem::path& path, const CharMap& table);

    bool contains(std::string_view word) const { return m_words.find(word) != m_words.end(); }
    std::size_t size() const noexcept { return m_words.size(); }

  private:
    std::unordered_set<std::string, StringHash, std::equal_to<>> m_words;
};

/// Drops tokens whose surface is a stopword; order and offsets kept.
std::vector<Token> remove_stopwords(std::span<const Token> tokens, const StopwordSet& stopwords);

/// Sets Token::stopword in place without removing anything.
void mark_stopwords(std::span<Token> tokens, const StopwordSet& stopwords);

}  // namespace coper::text
