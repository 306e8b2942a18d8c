#include "coper/common/snapshot.hpp"

#include "coper/common/error.hpp"

#include <openssl/evp.h>

namespace coper {

std::string Snapshot::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

Snapshot Snapshot::from_hex(std::string_view hex)
{
    if (hex.size() != 64) {
        throw InputError("snapshot hash must be 64 hex digits");
    }
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw InputError("invalid hex digit in snapshot hash");
    };
    Snapshot s;
    for (std::size_t i = 0; i < s.bytes.size(); ++i) {
        s.bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return s;
}

SnapshotHasher::SnapshotHasher() : m_ctx(EVP_MD_CTX_new())
{
    if (m_ctx == nullptr || EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(m_ctx), EVP_sha256(), nullptr) != 1) {
        throw InternalError("failed to initialise SHA-256");
    }
}

SnapshotHasher::~SnapshotHasher() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(m_ctx)); }

void SnapshotHasher::add_field(std::string_view field)
{
    std::uint8_t len[8];
    auto n = static_cast<std::uint64_t>(field.size());
    for (int i = 0; i < 8; ++i) {
        len[i] = static_cast<std::uint8_t>(n >> (8 * i));
    }
    auto* ctx = static_cast<EVP_MD_CTX*>(m_ctx);
    EVP_DigestUpdate(ctx, len, sizeof len);
    EVP_DigestUpdate(ctx, field.data(), field.size());
}

Snapshot SnapshotHasher::finish()
{
    Snapshot s;
    unsigned int len = 0;
    EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(m_ctx), s.bytes.data(), &len);
    return s;
}

}  // namespace coper
