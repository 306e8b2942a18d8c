#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace coper::text {

enum class PosTag { Noun, Verb, Adj, Adv, Num, Pron, Prep, Conj, Punc, Other };

/// Canonical upper-case symbol ("NOUN", "VERB", ...).
std::string_view to_string(PosTag tag) noexcept;
/// Inverse of to_string; nullopt for unknown symbols.
std::optional<PosTag> parse_pos_tag(std::string_view symbol) noexcept;

/// Text that went through normalize(). Only normalize() and trusted()
/// construct one, so holders can rely on the canonical form.
class NormalizedText {
  public:
    NormalizedText() = default;

    /// Wraps text already known to be normalized (e.g. read back from a
    /// corpus file this engine wrote).
    static NormalizedText trusted(std::string text) { return NormalizedText(std::move(text)); }

    const std::string& str() const noexcept { return m_text; }
    std::string_view view() const noexcept { return m_text; }
    bool empty() const noexcept { return m_text.empty(); }

    friend bool operator==(const NormalizedText&, const NormalizedText&) = default;

  private:
    explicit NormalizedText(std::string text) : m_text(std::move(text)) {}
    std::string m_text;
};

/// A word or punctuation mark. `start`/`end` are UTF-8 byte offsets into
/// the normalized text the token came from.
struct Token {
    std::string surface;
    std::size_t start = 0;
    std::size_t end = 0;
    std::optional<PosTag> pos;
    bool stopword = false;

    bool is_punct() const noexcept { return pos == PosTag::Punc; }
};

struct RawDocument {
    std::string id;
    std::string title;
    std::string body;
    std::optional<std::string> url;
    std::optional<std::string> published_at;
};

}  // namespace coper::text
