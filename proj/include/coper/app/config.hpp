#pragma once

#include "coper/fusion/search.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace coper::app {

struct EngineConfig {
    double k1 = 1.5;
    double b = 0.75;
    std::size_t pool = 800;
    double title_weight = 1.1;
    double omega_min = 0.1;
    double omega_max = 0.9;
    std::size_t embed_dim = 256;
    std::uint64_t embed_seed = 0;
    std::size_t top_k = 10;
    std::size_t keywords_per_doc = 10;
    std::size_t max_ngram = 3;
    /// "hash" for the built-in embedder, otherwise a shell command speaking
    /// the JSON-lines embedding protocol.
    std::string embedder = "hash";
    std::filesystem::path stopwords;
    std::filesystem::path patterns;
    std::filesystem::path gazetteer_place;
    std::filesystem::path gazetteer_person;
    std::filesystem::path lexicon;
    std::filesystem::path mapping;
    std::filesystem::path index_dir = "index";
    unsigned threads = 0;  // 0 = hardware concurrency

    /// Defaults with resource paths under `data_dir`.
    static EngineConfig defaults(const std::filesystem::path& data_dir);

    /// Applies `key = value` lines over `base`. Relative paths resolve
    /// against `base_dir`. Unknown keys and bad values raise ConfigError
    /// naming the line.
    static EngineConfig parse(std::string_view text, const EngineConfig& base, const std::string& source = "<config>",
                              const std::filesystem::path& base_dir = {});
    static EngineConfig load(const std::filesystem::path& path, const EngineConfig& base);

    /// Overrides from variables named COPER_<KEY>.
    void apply_env(const std::function<std::optional<std::string>(const std::string&)>& getenv);
    void apply_env();

    void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});

    /// Range checks plus existence of every resource file.
    void validate() const;

    /// Hash over every setting and resource file that shapes the built
    /// indexes. Search-time settings are left out.
    std::string fingerprint() const;

    fusion::SearchParams search_params() const;
    unsigned effective_threads() const;

    /// `key = value` lines for every field.
    std::string render() const;
};

}  // namespace coper::app
