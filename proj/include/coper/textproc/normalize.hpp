#pragma once

#include "coper/textproc/types.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <unordered_map>

namespace coper::text {

inline constexpr char32_t kZwnj = 0x200C;

/// Codepoint substitution table read from a `source<TAB>target` TSV file.
/// Each column holds either `U+XXXX` or a literal character; an empty
/// target deletes the source character. Targets may not appear as sources.
class CharMap {
  public:
    CharMap() = default;

    static CharMap load(const std::filesystem::path& path);
    static CharMap parse(std::string_view tsv, std::string_view source_name = "<mapping>");

    /// nullopt: not mapped. Engaged nullopt-inner: delete the character.
    std::optional<std::optional<char32_t>> lookup(char32_t cp) const;

    bool empty() const noexcept { return m_map.empty(); }
    std::size_t size() const noexcept { return m_map.size(); }

  private:
    std::unordered_map<char32_t, std::optional<char32_t>> m_map;
};

/// Punctuation and symbol characters (Unicode P* and S* categories).
bool is_punctuation(char32_t cp) noexcept;
bool is_space(char32_t cp) noexcept;

/// Canonical form: NFC, table mappings, ZWNJ kept only between word
/// characters, whitespace runs collapsed to one ASCII space, trimmed.
/// Idempotent. Invalid UTF-8 raises InputError.
NormalizedText normalize(std::string_view text, const CharMap& table);

/// Decodes UTF-8, raising InputError on ill-formed input.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

}  // namespace coper::text
