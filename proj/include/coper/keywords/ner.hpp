#pragma once

#include "coper/textproc/normalize.hpp"
#include "coper/textproc/tokenize.hpp"
#include "coper/textproc/types.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace coper::keywords {

/// Marks tokens that belong to a named entity.
class EntityRecognizer {
  public:
    virtual ~EntityRecognizer() = default;
    /// One flag per token, true for entity tokens.
    virtual std::vector<bool> entity_mask(std::span<const text::Token> tokens) const = 0;
};

/// Entity names of one class, each stored as its normalized token sequence.
class Gazetteer {
  public:
    Gazetteer() = default;
    explicit Gazetteer(std::string label) : m_label(std::move(label)) {}

    /// One entity per line; blank lines and '#' comments are skipped. A
    /// missing file raises ConfigError.
    static Gazetteer load(const std::filesystem::path& path, std::string label, const text::CharMap& table);

    void add(const text::NormalizedText& entry);
    bool contains(std::span<const text::Token> tokens) const;
    const std::string& label() const noexcept { return m_label; }
    std::size_t size() const noexcept { return m_entries.size(); }
    std::size_t longest() const noexcept { return m_longest; }

  private:
    std::string m_label;
    std::unordered_set<std::string, text::StringHash, std::equal_to<>> m_entries;
    std::size_t m_longest = 0;
};

/// Greedy longest match over all gazetteers, left to right.
class GazetteerRecognizer final : public EntityRecognizer {
  public:
    GazetteerRecognizer() = default;
    explicit GazetteerRecognizer(std::vector<Gazetteer> gazetteers) : m_gazetteers(std::move(gazetteers)) {}

    std::vector<bool> entity_mask(std::span<const text::Token> tokens) const override;

  private:
    std::vector<Gazetteer> m_gazetteers;
};

std::vector<text::Token> filter_named_entities(std::span<const text::Token> tokens, const EntityRecognizer& ner);

}  // namespace coper::keywords
