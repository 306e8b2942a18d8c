#pragma once

#include "coper/textproc/types.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coper::fusion {

/// A regular expression over POS tags, compiled to a Thompson NFA so that
/// matching is linear in the input for every pattern.
///
///   alt    := concat ('|' concat)*
///   concat := repeat+
///   repeat := atom ('+' | '*' | '?')*
///   atom   := TAG | ANY | '(' alt ')'
///
/// TAG is one of NOUN VERB ADJ ADV NUM PRON PREP CONJ PUNC OTHER.
class Pattern {
  public:
    /// Raises ConfigError with the offending position on a syntax error.
    static Pattern compile(std::string_view source);

    const std::string& source() const noexcept { return m_source; }

    /// Length of the longest non-empty match starting at `start`.
    std::optional<std::size_t> longest_match(std::span<const text::PosTag> tags, std::size_t start) const;

    struct State {
        enum class Kind { Tag, Any, Split, Match } kind;
        text::PosTag tag = text::PosTag::Other;
        int out = -1;
        int out2 = -1;
    };

  private:
    std::string m_source;
    std::vector<State> m_states;
    int m_start = -1;

    friend class PatternCompiler;
};

class PatternSet {
  public:
    /// One pattern per line; blank lines and '#' comments skipped. Raises
    /// ConfigError on a bad pattern or when no pattern is present.
    static PatternSet parse(std::string_view text, const std::string& source = "<patterns>");
    static PatternSet load(const std::filesystem::path& path);

    void add(Pattern p) { m_patterns.push_back(std::move(p)); }
    std::size_t size() const noexcept { return m_patterns.size(); }
    std::span<const Pattern> patterns() const noexcept { return m_patterns; }

    /// Non-overlapping matches as [begin, end) spans: scanning left to
    /// right, at each position the longest match of any pattern wins.
    std::vector<std::pair<std::size_t, std::size_t>> find_matches(std::span<const text::PosTag> tags) const;

  private:
    std::vector<Pattern> m_patterns;
};

}  // namespace coper::fusion
