#include "coper/semantic/provider.hpp"

#include "coper/common/error.hpp"
#include "coper/textproc/normalize.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

namespace coper::semantic {

namespace {

constexpr char32_t kBos = 0x02;
constexpr char32_t kSep = 0x1F;
constexpr char32_t kEos = 0x03;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::u32string_view gram)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char32_t c : gram) {
        for (int i = 0; i < 4; ++i) {
            h ^= (static_cast<std::uint32_t>(c) >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    }
    return h;
}

}  // namespace

HashEmbedder::HashEmbedder(std::size_t dim, std::uint64_t seed) : m_dim(dim), m_seed(seed)
{
    if (dim == 0) {
        throw ConfigError("embedding dimension must be positive");
    }
}

std::vector<double> HashEmbedder::embed(std::span<const std::string> segments) const
{
    std::vector<double> v(m_dim, 0.0);
    std::u32string seq{kBos};
    bool any = false;
    for (const auto& s : segments) {
        if (s.empty()) {
            continue;
        }
        if (any) {
            seq.push_back(kSep);
        }
        try {
            seq += text::decode_utf8(s);
        } catch (const InputError& e) {
            throw EmbeddingError(e.what());
        }
        any = true;
    }
    if (!any) {
        return v;
    }
    seq.push_back(kEos);

    const std::uint64_t salt = splitmix64(m_seed);
    std::u32string_view view(seq);
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t i = 0; i + n <= view.size(); ++i) {
            auto h = splitmix64(fnv1a(view.substr(i, n)) ^ salt ^ n);
            auto bucket = static_cast<std::size_t>(h % m_dim);
            // low 52 bits -> magnitude in [0.5, 1.5), top bit -> sign
            double magnitude = 0.5 + static_cast<double>(h & ((1ULL << 52) - 1)) / static_cast<double>(1ULL << 52);
            v[bucket] += (h >> 63) ? -magnitude : magnitude;
        }
    }
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    if (sq == 0.0) {
        return v;
    }
    double norm = std::sqrt(sq);
    for (double& x : v) {
        x /= norm;
    }
    return v;
}

ProcessEmbeddingProvider::ProcessEmbeddingProvider(std::string command, std::size_t dim)
    : m_command(std::move(command)), m_dim(dim)
{
    if (dim == 0) {
        throw ConfigError("embedding dimension must be positive");
    }
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
        throw EmbeddingError(std::string("socketpair: ") + std::strerror(errno));
    }
    pid_t pid = ::fork();
    if (pid < 0) {
        ::close(fds[0]);
        ::close(fds[1]);
        throw EmbeddingError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(fds[1], STDIN_FILENO);
        ::dup2(fds[1], STDOUT_FILENO);
        ::execl("/bin/sh", "sh", "-c", m_command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::close(fds[1]);
    m_fd = fds[0];
    m_pid = pid;
}

ProcessEmbeddingProvider::~ProcessEmbeddingProvider()
{
    if (m_fd >= 0) {
        ::close(m_fd);
    }
    if (m_pid > 0) {
        ::kill(m_pid, SIGTERM);
        int status = 0;
        ::waitpid(m_pid, &status, 0);
    }
}

std::string ProcessEmbeddingProvider::read_line() const
{
    for (;;) {
        auto nl = m_pending.find('\n');
        if (nl != std::string::npos) {
            auto line = m_pending.substr(0, nl);
            m_pending.erase(0, nl + 1);
            return line;
        }
        char buf[4096];
        auto n = ::recv(m_fd, buf, sizeof buf, 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            throw EmbeddingError("embedding process '" + m_command + "' closed its output");
        }
        m_pending.append(buf, static_cast<std::size_t>(n));
    }
}

std::vector<double> ProcessEmbeddingProvider::embed(std::span<const std::string> segments) const
{
    std::lock_guard lock(m_mutex);
    nlohmann::json request{{"segments", std::vector<std::string>(segments.begin(), segments.end())}};
    std::string line = request.dump() + "\n";
    std::size_t sent = 0;
    while (sent < line.size()) {
        auto n = ::send(m_fd, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            throw EmbeddingError("embedding process '" + m_command + "' is not accepting input");
        }
        sent += static_cast<std::size_t>(n);
    }

    std::vector<double> v;
    try {
        auto reply = nlohmann::json::parse(read_line());
        v = reply.at("vector").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw EmbeddingError(std::string("malformed embedding reply: ") + e.what());
    }
    if (v.size() != m_dim) {
        throw EmbeddingError("embedding reply has " + std::to_string(v.size()) + " values, expected " +
                             std::to_string(m_dim));
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw EmbeddingError("embedding reply contains a non-finite value");
        }
    }
    return v;
}

}  // namespace coper::semantic
