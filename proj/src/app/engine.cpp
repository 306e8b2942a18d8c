#include "coper/app/engine.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"
#include "coper/semantic/representation.hpp"

#include <json.hpp>

namespace coper::app {

namespace {

constexpr int kManifestVersion = 1;

std::string content_hash(std::string_view bytes)
{
    SnapshotHasher h;
    h.add_field(bytes);
    return h.finish().hex();
}

template <typename Fn>
auto stage(const char* name, const std::string& doc_id, Fn&& fn)
{
    try {
        return fn();
    } catch (const BuildError&) {
        throw;
    } catch (const std::exception& e) {
        throw BuildError(name, doc_id, e.what());
    }
}

}  // namespace

Resources load_resources(const EngineConfig& config)
{
    config.validate();
    Resources r;
    auto pipeline = std::make_shared<text::TextPipeline>();
    pipeline->charmap = text::CharMap::load(config.mapping);
    pipeline->stopwords = text::StopwordSet::load(config.stopwords, pipeline->charmap);
    pipeline->tagger =
        std::make_shared<text::LexiconTagger>(text::LexiconTagger::load(config.lexicon, pipeline->charmap));
    r.ner = std::make_shared<keywords::GazetteerRecognizer>(std::vector<keywords::Gazetteer>{
        keywords::Gazetteer::load(config.gazetteer_place, "PLACE", pipeline->charmap),
        keywords::Gazetteer::load(config.gazetteer_person, "PERSON", pipeline->charmap),
    });
    r.pipeline = std::move(pipeline);
    r.patterns = std::make_shared<fusion::PatternSet>(fusion::PatternSet::load(config.patterns));
    if (config.embedder == "hash") {
        r.provider = std::make_shared<semantic::HashEmbedder>(config.embed_dim, config.embed_seed);
    } else {
        r.provider = std::make_shared<semantic::ProcessEmbeddingProvider>(config.embedder, config.embed_dim);
    }
    return r;
}

EngineState build_engine(const CorpusStore& corpus, const EngineConfig& config, const Resources& resources)
{
    if (corpus.empty()) {
        throw BuildError("corpus", "", "corpus is empty");
    }
    const auto& docs = corpus.docs();
    std::vector<text::ProcessedDocument> processed(docs.size());
    std::vector<std::vector<keywords::NounPhrase>> phrases(docs.size());
    std::vector<semantic::DocSemanticVector> vectors(docs.size());

    parallel_for(docs.size(), config.effective_threads(), [&](std::size_t i) {
        const auto& raw = docs[i];
        processed[i] = stage("analyze", raw.id, [&] { return text::process_document(raw, *resources.pipeline); });
        phrases[i] = stage("keywords", raw.id, [&] {
            return keywords::extract_keywords(processed[i], config.keywords_per_doc, *resources.ner, config.max_ngram);
        });
        vectors[i] = stage("embed", raw.id, [&] {
            std::vector<std::string> nps;
            for (const auto& np : phrases[i]) nps.push_back(np.text);
            const auto& p = *resources.provider;
            auto v = semantic::build_doc_vector(raw.id, semantic::embed_title(processed[i].title.view(), p, raw.id),
                                                semantic::embed_noun_phrases(nps, p, raw.id), config.title_weight);
            v.vec = semantic::quantize_f32(std::move(v.vec));
            return v;
        });
    });

    EngineState state;
    state.config = config;
    state.resources = resources;
    state.corpus = std::make_shared<const CorpusStore>(corpus);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto& list = state.keywords[docs[i].id];
        for (const auto& np : phrases[i]) list.push_back({np.text, np.keyword, np.score});
    }
    auto lexical = stage("lexical", "", [&] {
        std::vector<lexical::IndexedText> texts;
        texts.reserve(docs.size());
        for (const auto& d : processed) texts.push_back({d.id, text::index_terms(d)});
        return std::make_shared<const lexical::InvertedIndex>(lexical::InvertedIndex::build(texts, corpus.snapshot()));
    });
    auto vindex = stage("vectors", "", [&] {
        return std::make_shared<const semantic::VectorIndex>(semantic::VectorIndex::build(std::move(vectors)));
    });
    state.engine = stage("engine", "", [&] {
        fusion::EngineParts parts{resources.pipeline, resources.patterns, lexical, vindex, corpus.snapshot(),
                                  resources.provider};
        return std::make_shared<const fusion::SearchEngine>(std::move(parts), config.search_params());
    });
    return state;
}

EngineState build_engine(const CorpusStore& corpus, const EngineConfig& config)
{
    return build_engine(corpus, config, load_resources(config));
}

std::string keywords_to_jsonl(const KeywordTable& table)
{
    std::string out;
    for (const auto& [id, list] : table) {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["phrases"] = nlohmann::ordered_json::array();
        for (const auto& p : list) {
            j["phrases"].push_back({{"text", p.text}, {"keyword", p.keyword}, {"score", p.score}});
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

KeywordTable keywords_from_jsonl(std::string_view text, const std::string& source)
{
    KeywordTable out;
    std::size_t lineno = 0;
    for (auto line : split(text, '\n')) {
        ++lineno;
        if (trim(line).empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            auto& list = out[j.at("id").get<std::string>()];
            for (const auto& p : j.at("phrases")) {
                list.push_back({p.at("text").get<std::string>(), p.at("keyword").get<std::string>(),
                                p.at("score").get<double>()});
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    return out;
}

void save_engine(const EngineState& state)
{
    IndexLayout layout{state.config.index_dir};
    const auto& snap = state.corpus->snapshot();
    auto keywords = keywords_to_jsonl(state.keywords);
    write_file_atomic(layout.corpus(), state.corpus->to_jsonl());
    write_file_atomic(layout.lexical(), state.engine->lexical_index().serialize());
    write_file_atomic(layout.embeddings(), semantic::serialize_embeddings(state.engine->vector_index(), snap));
    write_file_atomic(layout.keywords(), keywords);

    nlohmann::ordered_json m;
    m["format_version"] = kManifestVersion;
    m["snapshot"] = snap.hex();
    m["config_fingerprint"] = state.config.fingerprint();
    m["documents"] = state.corpus->size();
    m["embed_dim"] = state.config.embed_dim;
    m["keywords_sha256"] = content_hash(keywords);
    write_file_atomic(layout.manifest(), m.dump(2) + "\n");
}

namespace {

nlohmann::json read_manifest(const IndexLayout& layout)
{
    if (!std::filesystem::exists(layout.manifest())) {
        throw ConfigError("no built index in " + layout.dir.string() + " (run 'coper build')");
    }
    try {
        auto m = nlohmann::json::parse(read_file(layout.manifest()));
        if (m.at("format_version").get<int>() != kManifestVersion) {
            throw ConsistencyError("unsupported manifest version in " + layout.manifest().string());
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(layout.manifest().string(), 1, e.what());
    }
}

}  // namespace

void store_corpus(const CorpusStore& corpus, const EngineConfig& config)
{
    write_file_atomic(IndexLayout{config.index_dir}.corpus(), corpus.to_jsonl());
}

CorpusStore load_corpus(const EngineConfig& config)
{
    IndexLayout layout{config.index_dir};
    if (!std::filesystem::exists(layout.corpus())) {
        throw ConfigError("no ingested corpus in " + layout.dir.string() + " (run 'coper ingest')");
    }
    return ingest(layout.corpus(), text::CharMap::load(config.mapping));
}

bool index_is_current(const CorpusStore& corpus, const EngineConfig& config)
{
    IndexLayout layout{config.index_dir};
    if (!std::filesystem::exists(layout.manifest())) return false;
    for (const auto& p : {layout.lexical(), layout.embeddings(), layout.keywords()}) {
        if (!std::filesystem::exists(p)) return false;
    }
    try {
        auto m = read_manifest(layout);
        return m.at("snapshot").get<std::string>() == corpus.snapshot().hex() &&
               m.at("config_fingerprint").get<std::string>() == config.fingerprint();
    } catch (const Error&) {
        return false;
    }
}

bool build_all(const EngineConfig& config, bool force)
{
    auto corpus = load_corpus(config);
    if (!force && index_is_current(corpus, config)) {
        return false;
    }
    save_engine(build_engine(corpus, config));
    return true;
}

EngineState load_engine(const EngineConfig& config)
{
    IndexLayout layout{config.index_dir};
    auto manifest = read_manifest(layout);
    auto resources = load_resources(config);
    auto corpus = std::make_shared<const CorpusStore>(load_corpus(config));

    auto expect = manifest.at("snapshot").get<std::string>();
    if (corpus->snapshot().hex() != expect) {
        throw ConsistencyError("corpus snapshot " + corpus->snapshot().hex() + " does not match manifest " + expect);
    }
    if (manifest.at("config_fingerprint").get<std::string>() != config.fingerprint()) {
        throw ConsistencyError("index in " + layout.dir.string() +
                               " was built with a different configuration (run 'coper build --rebuild')");
    }
    auto lexical = std::make_shared<const lexical::InvertedIndex>(lexical::InvertedIndex::load(layout.lexical()));
    if (!(lexical->snapshot() == corpus->snapshot())) {
        throw ConsistencyError("lexical index snapshot " + lexical->snapshot().hex() + " does not match corpus " +
                               corpus->snapshot().hex());
    }
    auto cache = semantic::load_embeddings(layout.embeddings());
    if (!(cache.snapshot == corpus->snapshot())) {
        throw ConsistencyError("embedding cache snapshot " + cache.snapshot.hex() + " does not match corpus " +
                               corpus->snapshot().hex());
    }
    auto kw_text = read_file(layout.keywords());
    if (content_hash(kw_text) != manifest.at("keywords_sha256").get<std::string>()) {
        throw ConsistencyError("keywords file does not match the manifest");
    }

    EngineState state;
    state.config = config;
    state.resources = resources;
    state.corpus = corpus;
    state.keywords = keywords_from_jsonl(kw_text, layout.keywords().string());
    auto vindex = std::make_shared<const semantic::VectorIndex>(std::move(cache.index));
    fusion::EngineParts parts{resources.pipeline, resources.patterns, lexical, vindex, cache.snapshot,
                              resources.provider};
    state.engine = std::make_shared<const fusion::SearchEngine>(std::move(parts), config.search_params());
    return state;
}

}  // namespace coper::app
