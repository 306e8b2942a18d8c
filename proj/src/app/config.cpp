#include "coper/app/config.hpp"

#include "coper/common/error.hpp"
#include "coper/common/snapshot.hpp"
#include "coper/common/util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace coper::app {

namespace {

const char* const kKeys[] = {"k1",          "b",         "pool",           "title_weight", "omega_min",
                             "omega_max",   "embed_dim", "embed_seed",     "top_k",        "keywords_per_doc",
                             "max_ngram",   "embedder",  "stopwords",      "patterns",     "gazetteer_place",
                             "gazetteer_person", "lexicon", "mapping",     "index_dir",    "threads"};

double to_double(std::string_view key, std::string_view v)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError("config key '" + std::string(key) + "': '" + std::string(v) + "' is not a number");
    }
    return out;
}

template <typename T>
T to_unsigned(std::string_view key, std::string_view v)
{
    T out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("config key '" + std::string(key) + "': '" + std::string(v) +
                          "' is not a non-negative integer");
    }
    return out;
}

std::filesystem::path to_path(std::string_view v, const std::filesystem::path& base_dir)
{
    std::filesystem::path p{std::string(v)};
    if (p.is_relative() && !base_dir.empty()) {
        p = base_dir / p;
    }
    return p;
}

std::string shortest(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

EngineConfig EngineConfig::defaults(const std::filesystem::path& data_dir)
{
    EngineConfig c;
    c.stopwords = data_dir / "stopwords.txt";
    c.patterns = data_dir / "patterns.txt";
    c.gazetteer_place = data_dir / "gazetteer_place.txt";
    c.gazetteer_person = data_dir / "gazetteer_person.txt";
    c.lexicon = data_dir / "lexicon.tsv";
    c.mapping = data_dir / "mapping.tsv";
    return c;
}

void EngineConfig::set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir)
{
    value = trim(value);
    if (key == "k1") k1 = to_double(key, value);
    else if (key == "b") b = to_double(key, value);
    else if (key == "pool") pool = to_unsigned<std::size_t>(key, value);
    else if (key == "title_weight") title_weight = to_double(key, value);
    else if (key == "omega_min") omega_min = to_double(key, value);
    else if (key == "omega_max") omega_max = to_double(key, value);
    else if (key == "embed_dim") embed_dim = to_unsigned<std::size_t>(key, value);
    else if (key == "embed_seed") embed_seed = to_unsigned<std::uint64_t>(key, value);
    else if (key == "top_k") top_k = to_unsigned<std::size_t>(key, value);
    else if (key == "keywords_per_doc") keywords_per_doc = to_unsigned<std::size_t>(key, value);
    else if (key == "max_ngram") max_ngram = to_unsigned<std::size_t>(key, value);
    else if (key == "embedder") embedder = std::string(value);
    else if (key == "stopwords") stopwords = to_path(value, base_dir);
    else if (key == "patterns") patterns = to_path(value, base_dir);
    else if (key == "gazetteer_place") gazetteer_place = to_path(value, base_dir);
    else if (key == "gazetteer_person") gazetteer_person = to_path(value, base_dir);
    else if (key == "lexicon") lexicon = to_path(value, base_dir);
    else if (key == "mapping") mapping = to_path(value, base_dir);
    else if (key == "index_dir") index_dir = to_path(value, base_dir);
    else if (key == "threads") threads = to_unsigned<unsigned>(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

EngineConfig EngineConfig::parse(std::string_view text, const EngineConfig& base, const std::string& source,
                                 const std::filesystem::path& base_dir)
{
    EngineConfig out = base;
    std::size_t lineno = 0;
    for (auto raw : split(text, '\n')) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            out.set(trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

EngineConfig EngineConfig::load(const std::filesystem::path& path, const EngineConfig& base)
{
    return parse(read_file(path), base, path.string(), path.parent_path());
}

void EngineConfig::apply_env(const std::function<std::optional<std::string>(const std::string&)>& getenv)
{
    for (const char* key : kKeys) {
        std::string name = "COPER_";
        for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
        if (auto v = getenv(name)) {
            try {
                set(key, *v);
            } catch (const ConfigError& e) {
                throw ConfigError(name + ": " + e.what());
            }
        }
    }
}

void EngineConfig::apply_env()
{
    apply_env([](const std::string& name) -> std::optional<std::string> {
        const char* v = std::getenv(name.c_str());
        return v ? std::optional<std::string>(v) : std::nullopt;
    });
}

void EngineConfig::validate() const
{
    try {
        search_params().bm25.validate();
        search_params().omega.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(title_weight > 0.0)) throw ConfigError("title_weight must be > 0");
    if (embed_dim == 0) throw ConfigError("embed_dim must be >= 1");
    if (top_k == 0) throw ConfigError("top_k must be >= 1");
    if (keywords_per_doc == 0) throw ConfigError("keywords_per_doc must be >= 1");
    if (max_ngram == 0) throw ConfigError("max_ngram must be >= 1");
    if (embedder.empty()) throw ConfigError("embedder must be 'hash' or a command");
    const std::pair<const char*, const std::filesystem::path*> files[] = {
        {"stopwords", &stopwords},          {"patterns", &patterns}, {"gazetteer_place", &gazetteer_place},
        {"gazetteer_person", &gazetteer_person}, {"lexicon", &lexicon}, {"mapping", &mapping}};
    for (const auto& [key, path] : files) {
        if (!std::filesystem::is_regular_file(*path)) {
            throw ConfigError("config key '" + std::string(key) + "': file not found: " + path->string());
        }
    }
}

std::string EngineConfig::fingerprint() const
{
    SnapshotHasher h;
    h.add_field("title_weight=" + shortest(title_weight));
    h.add_field("embed_dim=" + std::to_string(embed_dim));
    h.add_field("embed_seed=" + std::to_string(embed_seed));
    h.add_field("keywords_per_doc=" + std::to_string(keywords_per_doc));
    h.add_field("max_ngram=" + std::to_string(max_ngram));
    h.add_field("embedder=" + embedder);
    for (const auto* p : {&stopwords, &gazetteer_place, &gazetteer_person, &lexicon, &mapping}) {
        h.add_field(read_file(*p));
    }
    return h.finish().hex();
}

fusion::SearchParams EngineConfig::search_params() const
{
    fusion::SearchParams p;
    p.bm25.k1 = k1;
    p.bm25.b = b;
    p.bm25.pool = pool;
    p.omega.min = omega_min;
    p.omega.max = omega_max;
    return p;
}

unsigned EngineConfig::effective_threads() const
{
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string EngineConfig::render() const
{
    std::string out;
    auto line = [&](const char* k, const std::string& v) { out += std::string(k) + " = " + v + "\n"; };
    line("k1", shortest(k1));
    line("b", shortest(b));
    line("pool", std::to_string(pool));
    line("title_weight", shortest(title_weight));
    line("omega_min", shortest(omega_min));
    line("omega_max", shortest(omega_max));
    line("embed_dim", std::to_string(embed_dim));
    line("embed_seed", std::to_string(embed_seed));
    line("top_k", std::to_string(top_k));
    line("keywords_per_doc", std::to_string(keywords_per_doc));
    line("max_ngram", std::to_string(max_ngram));
    line("embedder", embedder);
    line("stopwords", stopwords.string());
    line("patterns", patterns.string());
    line("gazetteer_place", gazetteer_place.string());
    line("gazetteer_person", gazetteer_person.string());
    line("lexicon", lexicon.string());
    line("mapping", mapping.string());
    line("index_dir", index_dir.string());
    line("threads", std::to_string(threads));
    return out;
}

}  // namespace coper::app
