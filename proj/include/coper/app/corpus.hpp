#pragma once

#include "coper/common/snapshot.hpp"
#include "coper/textproc/normalize.hpp"
#include "coper/textproc/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coper::app {

/// Normalized documents in ingestion order plus the snapshot binding every
/// index built from them.
class CorpusStore {
  public:
    CorpusStore() : CorpusStore(std::vector<text::RawDocument>{}) {}
    explicit CorpusStore(std::vector<text::RawDocument> docs);

    const std::vector<text::RawDocument>& docs() const noexcept { return m_docs; }
    std::size_t size() const noexcept { return m_docs.size(); }
    bool empty() const noexcept { return m_docs.empty(); }
    const Snapshot& snapshot() const noexcept { return m_snapshot; }

    /// nullptr when absent.
    const text::RawDocument* find(std::string_view id) const;

    /// One JSON object per line, fields in a fixed order.
    std::string to_jsonl() const;

  private:
    std::vector<text::RawDocument> m_docs;
    std::unordered_map<std::string, std::size_t> m_by_id;
    Snapshot m_snapshot;
};

/// Parses JSONL with at least id, title, body per line (url and
/// published_at optional), normalizing id, title and body. Malformed lines
/// raise ParseError with the line number; empty ids or titles raise
/// InputError; duplicate ids raise IngestionError listing every offender.
CorpusStore ingest_jsonl(std::string_view text, const text::CharMap& charmap, const std::string& source = "<corpus>");
CorpusStore ingest(const std::filesystem::path& path, const text::CharMap& charmap);

/// Hash over length-prefixed id, title, body, url and published_at of each
/// document in order.
Snapshot corpus_snapshot(const std::vector<text::RawDocument>& docs);

}  // namespace coper::app
