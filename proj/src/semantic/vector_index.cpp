#include "coper/semantic/vector_index.hpp"

#include "coper/common/binary_io.hpp"
#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <algorithm>
#include <cmath>

namespace coper::semantic {

namespace {

constexpr std::string_view kMagic = "COPEREMB";

double cosine(std::span<const double> a, std::span<const double> b)
{
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

}  // namespace

VectorIndex VectorIndex::build(std::vector<DocSemanticVector> docs)
{
    VectorIndex idx;
    std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i > 0 && docs[i].doc_id == docs[i - 1].doc_id) {
            throw IngestionError("duplicate doc_id in vector index: " + docs[i].doc_id);
        }
        if (docs[i].vec.size() != docs[0].vec.size()) {
            throw ShapeError("vector for '" + docs[i].doc_id + "' has dimension " +
                             std::to_string(docs[i].vec.size()) + ", expected " +
                             std::to_string(docs[0].vec.size()));
        }
    }
    idx.m_dim = docs.empty() ? 0 : docs[0].vec.size();
    idx.m_docs = std::move(docs);
    return idx;
}

const DocSemanticVector* VectorIndex::find(std::string_view doc_id) const
{
    auto it = std::lower_bound(m_docs.begin(), m_docs.end(), doc_id,
                               [](const DocSemanticVector& d, std::string_view id) { return d.doc_id < id; });
    return (it != m_docs.end() && it->doc_id == doc_id) ? &*it : nullptr;
}

std::vector<VectorHit> VectorIndex::search(std::span<const double> q, std::size_t k) const
{
    if (!m_docs.empty() && q.size() != m_dim) {
        throw ShapeError("query has dimension " + std::to_string(q.size()) + ", index has " + std::to_string(m_dim));
    }
    std::vector<VectorHit> hits;
    hits.reserve(m_docs.size());
    for (const auto& d : m_docs) {
        hits.push_back(VectorHit{d.doc_id, cosine(q, d.vec)});
    }
    auto keep = std::min(k, hits.size());
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                      [](const VectorHit& a, const VectorHit& b) {
                          return a.cosine != b.cosine ? a.cosine > b.cosine : a.doc_id < b.doc_id;
                      });
    hits.resize(keep);
    return hits;
}

std::vector<VectorHit> vindex_search(std::span<const double> q, const VectorIndex& idx, std::size_t k)
{
    return idx.search(q, k);
}

std::vector<double> quantize_f32(std::vector<double> v)
{
    for (double& x : v) {
        x = static_cast<double>(static_cast<float>(x));
    }
    return v;
}

std::string serialize_embeddings(const VectorIndex& idx, const Snapshot& snapshot)
{
    if (idx.dim() % 2 != 0) {
        throw ShapeError("document vectors must have even length");
    }
    io::BinaryWriter w;
    w.bytes(kMagic);
    w.le(kEmbeddingCacheVersion);
    w.le(static_cast<std::uint32_t>(idx.dim() / 2));
    w.le(static_cast<std::uint32_t>(idx.size()));
    w.snapshot(snapshot);
    for (const auto& d : idx.docs()) {
        w.str(d.doc_id);
        for (double x : d.vec) {
            w.f32(static_cast<float>(x));
        }
    }
    return w.buffer();
}

EmbeddingCache deserialize_embeddings(std::string_view bytes, const std::string& source)
{
    io::BinaryReader r(bytes, source);
    if (r.bytes(kMagic.size()) != kMagic) {
        throw InputError(source + ": not a coper embedding cache");
    }
    auto version = r.le<std::uint32_t>();
    if (version != kEmbeddingCacheVersion) {
        throw InputError(source + ": unsupported embedding cache version " + std::to_string(version));
    }
    auto half = r.le<std::uint32_t>();
    auto count = r.le<std::uint32_t>();
    EmbeddingCache out;
    out.snapshot = r.snapshot();
    std::vector<DocSemanticVector> docs;
    docs.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        DocSemanticVector d;
        d.doc_id = r.str();
        d.vec.resize(2 * static_cast<std::size_t>(half));
        for (double& x : d.vec) {
            x = r.f32();
        }
        docs.push_back(std::move(d));
    }
    if (!r.at_end()) {
        throw InputError(source + ": trailing bytes after embedding data");
    }
    out.index = VectorIndex::build(std::move(docs));
    return out;
}

void save_embeddings(const std::filesystem::path& path, const VectorIndex& idx, const Snapshot& snapshot)
{
    write_file_atomic(path, serialize_embeddings(idx, snapshot));
}

EmbeddingCache load_embeddings(const std::filesystem::path& path)
{
    return deserialize_embeddings(read_file(path), path.string());
}

}  // namespace coper::semantic
