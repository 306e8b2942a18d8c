#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace coper {

/// SHA-256 content hash binding every index file to one corpus state.
struct Snapshot {
    std::array<std::uint8_t, 32> bytes{};

    std::string hex() const;
    static Snapshot from_hex(std::string_view hex);

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Incremental SHA-256 over length-prefixed fields.
class SnapshotHasher {
  public:
    SnapshotHasher();
    ~SnapshotHasher();
    SnapshotHasher(const SnapshotHasher&) = delete;
    SnapshotHasher& operator=(const SnapshotHasher&) = delete;

    /// Feeds `field` prefixed with its 64-bit length so that field
    /// boundaries are part of the hash.
    void add_field(std::string_view field);
    Snapshot finish();

  private:
    void* m_ctx;
};

}  // namespace coper
