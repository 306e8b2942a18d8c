#pragma once

#include "coper/common/snapshot.hpp"
#include "coper/textproc/tokenize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coper::lexical {

using TermId = std::uint32_t;
/// Dense document number. Numbers follow ascending doc_id order, so
/// ordering by DocNo is ordering by doc_id.
using DocNo = std::uint32_t;

struct Posting {
    DocNo doc;
    std::uint32_t tf;
};

struct TermFreq {
    TermId term;
    std::uint32_t tf;
};

/// Input record for index construction: a document id and its index terms
/// (tokenized, stopwords and punctuation already removed).
struct IndexedText {
    std::string doc_id;
    std::vector<std::string> terms;
};

/// Immutable inverted index with a forward (per-document) view.
///
/// Terms are numbered in lexicographic order and documents in doc_id
/// order, so the same corpus always yields the same index regardless of
/// ingestion order.
class InvertedIndex {
  public:
    static constexpr std::uint32_t kFormatVersion = 1;

    InvertedIndex() = default;

    /// Duplicate doc ids raise IngestionError.
    static InvertedIndex build(std::span<const IndexedText> docs, const Snapshot& snapshot = {});

    std::size_t num_docs() const noexcept { return m_doc_ids.size(); }
    double avgdl() const noexcept { return m_avgdl; }
    std::size_t vocabulary_size() const noexcept { return m_terms.size(); }
    const Snapshot& snapshot() const noexcept { return m_snapshot; }

    std::optional<DocNo> find_doc(std::string_view doc_id) const;
    const std::string& doc_id(DocNo doc) const { return m_doc_ids.at(doc); }
    std::uint32_t doc_len(DocNo doc) const { return m_doc_lens.at(doc); }

    std::optional<TermId> find_term(std::string_view term) const;
    const std::string& term(TermId id) const { return m_terms.at(id); }
    std::span<const Posting> postings(TermId id) const;
    std::size_t df(TermId id) const { return postings(id).size(); }

    /// Term frequencies of one document, ascending by TermId.
    std::span<const TermFreq> doc_terms(DocNo doc) const;

    std::string serialize() const;
    static InvertedIndex deserialize(std::string_view bytes, const std::string& source = "<index>");
    void save(const std::filesystem::path& path) const;
    static InvertedIndex load(const std::filesystem::path& path);

  private:
    void finalize();

    Snapshot m_snapshot;
    std::vector<std::string> m_doc_ids;
    std::vector<std::uint32_t> m_doc_lens;
    std::vector<std::string> m_terms;
    std::vector<std::size_t> m_post_offsets{0};
    std::vector<Posting> m_postings;

    // derived on build/load
    double m_avgdl = 0.0;
    std::unordered_map<std::string, DocNo, text::StringHash, std::equal_to<>> m_doc_lookup;
    std::unordered_map<std::string, TermId, text::StringHash, std::equal_to<>> m_term_lookup;
    std::vector<std::size_t> m_fwd_offsets{0};
    std::vector<TermFreq> m_forward;
};

}  // namespace coper::lexical
