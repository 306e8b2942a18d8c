#pragma once

#include "coper/app/config.hpp"
#include "coper/app/corpus.hpp"
#include "coper/fusion/search.hpp"
#include "coper/keywords/extract.hpp"
#include "coper/keywords/ner.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace coper::app {

/// Loaded text resources and the embedding provider named by a config.
struct Resources {
    std::shared_ptr<const text::TextPipeline> pipeline;
    std::shared_ptr<const fusion::PatternSet> patterns;
    std::shared_ptr<const keywords::GazetteerRecognizer> ner;
    std::shared_ptr<const semantic::EmbeddingProvider> provider;
};

Resources load_resources(const EngineConfig& config);

struct StoredPhrase {
    std::string text;
    std::string keyword;
    double score = 0.0;

    friend bool operator==(const StoredPhrase&, const StoredPhrase&) = default;
};

using KeywordTable = std::map<std::string, std::vector<StoredPhrase>, std::less<>>;

/// A searchable engine: corpus, extracted noun phrases and the fused
/// search engine over the lexical and vector indexes.
struct EngineState {
    EngineConfig config;
    Resources resources;
    std::shared_ptr<const CorpusStore> corpus;
    KeywordTable keywords;
    std::shared_ptr<const fusion::SearchEngine> engine;
};

/// Files inside an index directory.
struct IndexLayout {
    std::filesystem::path dir;

    std::filesystem::path corpus() const { return dir / "corpus.jsonl"; }
    std::filesystem::path lexical() const { return dir / "lexical.idx"; }
    std::filesystem::path embeddings() const { return dir / "embeddings.bin"; }
    std::filesystem::path keywords() const { return dir / "keywords.jsonl"; }
    std::filesystem::path manifest() const { return dir / "manifest.json"; }
};

/// Builds every index from `corpus` in memory. Failures raise BuildError
/// naming the stage and, where known, the document.
EngineState build_engine(const CorpusStore& corpus, const EngineConfig& config, const Resources& resources);
EngineState build_engine(const CorpusStore& corpus, const EngineConfig& config);

/// Writes corpus, indexes, keywords and manifest into config.index_dir.
/// Each file is replaced atomically; the manifest is written last.
void save_engine(const EngineState& state);

/// True when the manifest in config.index_dir matches `corpus` and the
/// config fingerprint.
bool index_is_current(const CorpusStore& corpus, const EngineConfig& config);

/// Ingests a normalized corpus into config.index_dir (corpus.jsonl only).
void store_corpus(const CorpusStore& corpus, const EngineConfig& config);

/// Reads the stored corpus from config.index_dir.
CorpusStore load_corpus(const EngineConfig& config);

/// Rebuilds unless the index is current (or `force`). Returns true when a
/// build ran.
bool build_all(const EngineConfig& config, bool force);

/// Loads a built index. Raises ConsistencyError when the files disagree on
/// the snapshot or the config fingerprint differs from the build.
EngineState load_engine(const EngineConfig& config);

std::string keywords_to_jsonl(const KeywordTable& table);
KeywordTable keywords_from_jsonl(std::string_view text, const std::string& source);

}  // namespace coper::app
