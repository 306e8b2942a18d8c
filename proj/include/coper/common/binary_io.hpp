#pragma once

#include "coper/common/error.hpp"
#include "coper/common/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace coper::io {

/// Little-endian serializer into an in-memory buffer.
class BinaryWriter {
  public:
    void bytes(std::string_view raw) { m_buf.append(raw); }

    template <typename T>
    void le(T value)
    {
        static_assert(std::is_integral_v<T>);
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(value);
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            m_buf.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
        }
    }

    void f32(float value) { le(std::bit_cast<std::uint32_t>(value)); }
    void f64(double value) { le(std::bit_cast<std::uint64_t>(value)); }

    void str(std::string_view s)
    {
        le(static_cast<std::uint32_t>(s.size()));
        bytes(s);
    }

    void snapshot(const Snapshot& s)
    {
        bytes({reinterpret_cast<const char*>(s.bytes.data()), s.bytes.size()});
    }

    const std::string& buffer() const noexcept { return m_buf; }

  private:
    std::string m_buf;
};

/// Bounds-checked little-endian reader; truncation raises InputError.
class BinaryReader {
  public:
    BinaryReader(std::string_view data, std::string source)
        : m_data(data), m_source(std::move(source))
    {}

    std::string_view bytes(std::size_t n)
    {
        need(n);
        auto out = m_data.substr(m_pos, n);
        m_pos += n;
        return out;
    }

    template <typename T>
    T le()
    {
        static_assert(std::is_integral_v<T>);
        using U = std::make_unsigned_t<T>;
        need(sizeof(T));
        U u = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            u |= static_cast<U>(static_cast<unsigned char>(m_data[m_pos + i])) << (8 * i);
        }
        m_pos += sizeof(T);
        return static_cast<T>(u);
    }

    float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }
    double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }

    std::string str()
    {
        auto n = le<std::uint32_t>();
        return std::string(bytes(n));
    }

    Snapshot snapshot()
    {
        Snapshot s;
        auto raw = bytes(s.bytes.size());
        std::memcpy(s.bytes.data(), raw.data(), raw.size());
        return s;
    }

    bool at_end() const noexcept { return m_pos == m_data.size(); }

  private:
    void need(std::size_t n) const
    {
        if (m_data.size() - m_pos < n) {
            throw InputError(m_source + ": truncated file");
        }
    }

    std::string_view m_data;
    std::string m_source;
    std::size_t m_pos = 0;
};

}  // namespace coper::io
