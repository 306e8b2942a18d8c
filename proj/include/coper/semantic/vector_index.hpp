#pragma once

#include "coper/common/snapshot.hpp"
#include "coper/semantic/representation.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coper::semantic {

struct VectorHit {
    std::string doc_id;
    double cosine;
};

/// Exact flat cosine index. Vectors are kept in doc_id order.
class VectorIndex {
  public:
    VectorIndex() = default;

    /// ShapeError when dimensions differ, IngestionError on a repeated id.
    static VectorIndex build(std::vector<DocSemanticVector> docs);

    std::size_t size() const noexcept { return m_docs.size(); }
    /// Length of the stored vectors (0 for an empty index).
    std::size_t dim() const noexcept { return m_dim; }
    std::span<const DocSemanticVector> docs() const noexcept { return m_docs; }
    const DocSemanticVector* find(std::string_view doc_id) const;

    /// Top-k by cosine, descending, ties by doc_id ascending.
    std::vector<VectorHit> search(std::span<const double> q, std::size_t k) const;

  private:
    std::vector<DocSemanticVector> m_docs;
    std::size_t m_dim = 0;
};

std::vector<VectorHit> vindex_search(std::span<const double> q, const VectorIndex& idx, std::size_t k);

/// Rounds every component through float, the precision of the cache file,
/// so that vectors used in memory equal what a reload returns.
std::vector<double> quantize_f32(std::vector<double> v);

/// Cache layout (little-endian):
///   "COPEREMB" u32 version, u32 half_dim, u32 count, 32-byte snapshot,
///   count x { u32 id_len, id bytes, 2*half_dim f32 }
inline constexpr std::uint32_t kEmbeddingCacheVersion = 1;

std::string serialize_embeddings(const VectorIndex& idx, const Snapshot& snapshot);

struct EmbeddingCache {
    VectorIndex index;
    Snapshot snapshot;
};

EmbeddingCache deserialize_embeddings(std::string_view bytes, const std::string& source = "<embeddings>");
void save_embeddings(const std::filesystem::path& path, const VectorIndex& idx, const Snapshot& snapshot);
EmbeddingCache load_embeddings(const std::filesystem::path& path);

}  // namespace coper::semantic
