#include "coper/common/util.hpp"

#include "coper/common/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace coper {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write file: " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw ConfigError("short write: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string format6(double value)
{
    char buf[64];
    // -0.000000 and 0.000000 must serialize identically
    if (value == 0.0) {
        value = 0.0;
    }
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string out(buf);
    if (out == "-0.000000") {
        out = "0.000000";
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace coper
