#pragma once

#include "coper/textproc/tokenize.hpp"
#include "coper/textproc/types.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coper::text {

class CharMap;

/// Assigns one tag per token. Implementations must be safe to call from
/// several threads at once.
class PosTagger {
  public:
    virtual ~PosTagger() = default;
    virtual std::vector<PosTag> tag(std::span<const Token> tokens) const = 0;
};

/// Fallback tagger: punctuation and digit rules, then an exact lexicon,
/// then affix rules, then NOUN.
///
/// Lexicon TSV lines are `surface<TAB>TAG`. A surface written `*suffix`
/// is a suffix rule and `prefix*` a prefix rule; the longest matching
/// prefix rule wins, then the longest suffix rule. Affix rules only fire
/// on words strictly longer than the affix.
class LexiconTagger final : public PosTagger {
  public:
    LexiconTagger() = default;

    static LexiconTagger load(const std::filesystem::path& path, const CharMap& table);
    static LexiconTagger parse(std::string_view tsv, const CharMap& table,
                               std::string_view source_name = "<lexicon>");

    void add_word(std::string surface, PosTag tag);
    void add_prefix(std::string prefix, PosTag tag);
    void add_suffix(std::string suffix, PosTag tag);

    std::vector<PosTag> tag(std::span<const Token> tokens) const override;
    PosTag tag_word(std::string_view surface) const;

  private:
    std::unordered_map<std::string, PosTag, StringHash, std::equal_to<>> m_words;
    std::vector<std::pair<std::string, PosTag>> m_prefixes;  // longest first
    std::vector<std::pair<std::string, PosTag>> m_suffixes;  // longest first
};

/// Returns a copy of `tokens` with every `pos` set by `tagger`. A tagger
/// that fails, or returns the wrong number of tags, raises TaggingError
/// naming the offending token.
std::vector<Token> pos_tag(std::span<const Token> tokens, const PosTagger& tagger);

}  // namespace coper::text
