#include "coper/lexical/inverted_index.hpp"

#include "coper/common/binary_io.hpp"
#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <algorithm>
#include <numeric>

namespace coper::lexical {

namespace {

constexpr std::string_view kMagic = "COPERIDX";

}  // namespace

InvertedIndex InvertedIndex::build(std::span<const IndexedText> docs, const Snapshot& snapshot)
{
    std::vector<const IndexedText*> order;
    order.reserve(docs.size());
    for (const auto& d : docs) {
        order.push_back(&d);
    }
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->doc_id < b->doc_id; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (order[i]->doc_id == order[i - 1]->doc_id) {
            throw IngestionError("duplicate doc_id in index build: " + order[i]->doc_id);
        }
    }

    InvertedIndex index;
    index.m_snapshot = snapshot;
    std::unordered_map<std::string, std::vector<Posting>> postings;
    std::unordered_map<std::string_view, std::uint32_t> counts;
    for (std::size_t d = 0; d < order.size(); ++d) {
        const auto& doc = *order[d];
        index.m_doc_ids.push_back(doc.doc_id);
        index.m_doc_lens.push_back(static_cast<std::uint32_t>(doc.terms.size()));
        counts.clear();
        for (const auto& t : doc.terms) {
            ++counts[t];
        }
        for (const auto& [term, tf] : counts) {
            postings[std::string(term)].push_back(Posting{static_cast<DocNo>(d), tf});
        }
    }

    index.m_terms.reserve(postings.size());
    for (const auto& entry : postings) {
        index.m_terms.push_back(entry.first);
    }
    std::sort(index.m_terms.begin(), index.m_terms.end());
    for (const auto& term : index.m_terms) {
        auto& list = postings[term];
        std::sort(list.begin(), list.end(), [](const Posting& a, const Posting& b) { return a.doc < b.doc; });
        index.m_postings.insert(index.m_postings.end(), list.begin(), list.end());
        index.m_post_offsets.push_back(index.m_postings.size());
    }
    index.finalize();
    return index;
}

void InvertedIndex::finalize()
{
    m_doc_lookup.clear();
    for (std::size_t d = 0; d < m_doc_ids.size(); ++d) {
        m_doc_lookup.emplace(m_doc_ids[d], static_cast<DocNo>(d));
    }
    m_term_lookup.clear();
    for (std::size_t t = 0; t < m_terms.size(); ++t) {
        m_term_lookup.emplace(m_terms[t], static_cast<TermId>(t));
    }
    m_avgdl = m_doc_lens.empty()
                  ? 0.0
                  : std::accumulate(m_doc_lens.begin(), m_doc_lens.end(), 0.0) / static_cast<double>(m_doc_lens.size());

    // Forward view: bucket postings by document; iterating terms in id
    // order keeps each bucket sorted by TermId.
    std::vector<std::size_t> sizes(m_doc_ids.size(), 0);
    for (const auto& p : m_postings) {
        ++sizes[p.doc];
    }
    m_fwd_offsets.assign(m_doc_ids.size() + 1, 0);
    for (std::size_t d = 0; d < sizes.size(); ++d) {
        m_fwd_offsets[d + 1] = m_fwd_offsets[d] + sizes[d];
    }
    m_forward.assign(m_postings.size(), TermFreq{});
    std::vector<std::size_t> cursor(m_fwd_offsets.begin(), m_fwd_offsets.end() - 1);
    for (std::size_t t = 0; t < m_terms.size(); ++t) {
        for (const auto& p : postings(static_cast<TermId>(t))) {
            m_forward[cursor[p.doc]++] = TermFreq{static_cast<TermId>(t), p.tf};
        }
    }
}

std::optional<DocNo> InvertedIndex::find_doc(std::string_view doc_id) const
{
    auto it = m_doc_lookup.find(doc_id);
    if (it == m_doc_lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<TermId> InvertedIndex::find_term(std::string_view term) const
{
    auto it = m_term_lookup.find(term);
    if (it == m_term_lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<const Posting> InvertedIndex::postings(TermId id) const
{
    auto begin = m_post_offsets.at(id);
    auto end = m_post_offsets.at(id + 1);
    return {m_postings.data() + begin, end - begin};
}

std::span<const TermFreq> InvertedIndex::doc_terms(DocNo doc) const
{
    auto begin = m_fwd_offsets.at(doc);
    auto end = m_fwd_offsets.at(doc + 1);
    return {m_forward.data() + begin, end - begin};
}

// Layout (little-endian):
//   "COPERIDX" u32 version, 32-byte snapshot,
//   u64 N, N x { str doc_id, u32 doc_len },
//   u64 V, V x { str term, u32 df, df x { u32 doc, u32 tf } }
// where str is u32 byte length followed by UTF-8 bytes.
std::string InvertedIndex::serialize() const
{
    io::BinaryWriter w;
    w.bytes(kMagic);
    w.le(kFormatVersion);
    w.snapshot(m_snapshot);
    w.le(static_cast<std::uint64_t>(m_doc_ids.size()));
    for (std::size_t d = 0; d < m_doc_ids.size(); ++d) {
        w.str(m_doc_ids[d]);
        w.le(m_doc_lens[d]);
    }
    w.le(static_cast<std::uint64_t>(m_terms.size()));
    for (std::size_t t = 0; t < m_terms.size(); ++t) {
        w.str(m_terms[t]);
        auto list = postings(static_cast<TermId>(t));
        w.le(static_cast<std::uint32_t>(list.size()));
        for (const auto& p : list) {
            w.le(p.doc);
            w.le(p.tf);
        }
    }
    return w.buffer();
}

InvertedIndex InvertedIndex::deserialize(std::string_view bytes, const std::string& source)
{
    io::BinaryReader r(bytes, source);
    if (r.bytes(kMagic.size()) != kMagic) {
        throw InputError(source + ": not a coper index file");
    }
    auto version = r.le<std::uint32_t>();
    if (version != kFormatVersion) {
        throw InputError(source + ": unsupported index format version " + std::to_string(version));
    }
    InvertedIndex index;
    index.m_snapshot = r.snapshot();
    auto n = r.le<std::uint64_t>();
    for (std::uint64_t d = 0; d < n; ++d) {
        index.m_doc_ids.push_back(r.str());
        index.m_doc_lens.push_back(r.le<std::uint32_t>());
    }
    auto v = r.le<std::uint64_t>();
    for (std::uint64_t t = 0; t < v; ++t) {
        index.m_terms.push_back(r.str());
        auto df = r.le<std::uint32_t>();
        for (std::uint32_t i = 0; i < df; ++i) {
            Posting p{r.le<std::uint32_t>(), r.le<std::uint32_t>()};
            if (p.doc >= n) {
                throw InputError(source + ": posting references unknown document");
            }
            index.m_postings.push_back(p);
        }
        index.m_post_offsets.push_back(index.m_postings.size());
    }
    if (!r.at_end()) {
        throw InputError(source + ": trailing bytes after index data");
    }
    index.finalize();
    return index;
}

void InvertedIndex::save(const std::filesystem::path& path) const { write_file_atomic(path, serialize()); }

InvertedIndex InvertedIndex::load(const std::filesystem::path& path)
{
    return deserialize(read_file(path), path.string());
}

}  // namespace coper::lexical
