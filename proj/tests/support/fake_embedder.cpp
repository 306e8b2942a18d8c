// Stand-in external encoder speaking the line protocol.
//   fake_embedder DIM [ok|short|garbage|die]
// "ok" answers every request with a deterministic vector derived from the
// segments; the other modes misbehave on the first request.

#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: fake_embedder DIM [mode]\n";
        return 2;
    }
    const std::size_t dim = std::stoul(argv[1]);
    const std::string mode = argc > 2 ? argv[2] : "ok";
    std::string line;
    while (std::getline(std::cin, line)) {
        if (mode == "die") {
            return 1;
        }
        if (mode == "garbage") {
            std::cout << "not json" << std::endl;
            continue;
        }
        auto req = nlohmann::json::parse(line);
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& seg : req.at("segments")) {
            for (unsigned char c : seg.get<std::string>()) {
                h = (h ^ c) * 1099511628211ULL;
            }
            h = (h ^ 0xFF) * 1099511628211ULL;
        }
        nlohmann::json v = nlohmann::json::array();
        const std::size_t n = mode == "short" ? dim - 1 : dim;
        for (std::size_t i = 0; i < n; ++i) {
            h ^= h >> 33;
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 33;
            v.push_back(static_cast<double>(h % 2001) / 1000.0 - 1.0);
        }
        std::cout << nlohmann::json{{"vector", v}}.dump() << std::endl;
    }
    return 0;
}
