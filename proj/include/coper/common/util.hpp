#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace coper {

/// Reads a whole file; missing or unreadable files raise ConfigError.
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it over `path`, so
/// concurrent readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Fixed-point decimal rendering with six fractional digits.
std::string format6(double value);

/// Splits `line` on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view line, char sep);

std::string_view trim(std::string_view s);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; the first exception is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += threads) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    workers.clear();
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace coper
