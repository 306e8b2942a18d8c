#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <sys/types.h>
#include <vector>

namespace coper::semantic {

/// Text encoder. embed() must be deterministic and return `dim()` finite
/// values; implementations must tolerate concurrent calls.
class EmbeddingProvider {
  public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dim() const = 0;
    virtual std::vector<double> embed(std::span<const std::string> segments) const = 0;
};

/// Feature-hashing encoder over character 2..4-grams. Segments are joined
/// as BOS seg0 SEP seg1 ... EOS (empty segments skipped) before n-grams are
/// taken, so segment order matters. Each n-gram adds a signed weight drawn
/// from its seeded hash to one bucket; the result is L2-normalized, and all
/// zero when every segment is empty.
class HashEmbedder final : public EmbeddingProvider {
  public:
    explicit HashEmbedder(std::size_t dim = 256, std::uint64_t seed = 0);

    std::size_t dim() const override { return m_dim; }
    std::uint64_t seed() const noexcept { return m_seed; }
    std::vector<double> embed(std::span<const std::string> segments) const override;

  private:
    std::size_t m_dim;
    std::uint64_t m_seed;
};

/// Client for an external encoder process started with `/bin/sh -c command`.
/// Each request is one JSON line {"segments": [...]} on the child's stdin;
/// each reply one JSON line {"vector": [...]} on its stdout. Calls are
/// serialized. Protocol errors, wrong lengths and non-finite values raise
/// EmbeddingError.
class ProcessEmbeddingProvider final : public EmbeddingProvider {
  public:
    ProcessEmbeddingProvider(std::string command, std::size_t dim);
    ~ProcessEmbeddingProvider() override;
    ProcessEmbeddingProvider(const ProcessEmbeddingProvider&) = delete;
    ProcessEmbeddingProvider& operator=(const ProcessEmbeddingProvider&) = delete;

    std::size_t dim() const override { return m_dim; }
    std::vector<double> embed(std::span<const std::string> segments) const override;

  private:
    std::string read_line() const;

    std::string m_command;
    std::size_t m_dim;
    int m_fd = -1;
    pid_t m_pid = -1;
    mutable std::string m_pending;
    mutable std::mutex m_mutex;
};

}  // namespace coper::semantic
