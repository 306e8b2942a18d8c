#include "coper/app/corpus.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <json.hpp>

#include <map>

namespace coper::app {

Snapshot corpus_snapshot(const std::vector<text::RawDocument>& docs)
{
    SnapshotHasher h;
    h.add_field(std::to_string(docs.size()));
    for (const auto& d : docs) {
        h.add_field(d.id);
        h.add_field(d.title);
        h.add_field(d.body);
        h.add_field(d.url ? "1" + *d.url : "0");
        h.add_field(d.published_at ? "1" + *d.published_at : "0");
    }
    return h.finish();
}

CorpusStore::CorpusStore(std::vector<text::RawDocument> docs) : m_docs(std::move(docs))
{
    std::map<std::string, std::size_t> dup_counts;
    for (std::size_t i = 0; i < m_docs.size(); ++i) {
        if (!m_by_id.emplace(m_docs[i].id, i).second) {
            ++dup_counts[m_docs[i].id];
        }
    }
    if (!dup_counts.empty()) {
        std::string names;
        for (const auto& [id, n] : dup_counts) {
            names += (names.empty() ? "'" : ", '") + id + "'";
        }
        throw IngestionError("duplicate document ids: " + names);
    }
    m_snapshot = corpus_snapshot(m_docs);
}

const text::RawDocument* CorpusStore::find(std::string_view id) const
{
    auto it = m_by_id.find(std::string(id));
    return it == m_by_id.end() ? nullptr : &m_docs[it->second];
}

std::string CorpusStore::to_jsonl() const
{
    std::string out;
    for (const auto& d : m_docs) {
        nlohmann::ordered_json j;
        j["id"] = d.id;
        j["title"] = d.title;
        j["body"] = d.body;
        if (d.url) j["url"] = *d.url;
        if (d.published_at) j["published_at"] = *d.published_at;
        out += j.dump();
        out += '\n';
    }
    return out;
}

CorpusStore ingest_jsonl(std::string_view text, const text::CharMap& charmap, const std::string& source)
{
    std::vector<text::RawDocument> docs;
    std::size_t lineno = 0;
    for (auto raw : split(text, '\n')) {
        ++lineno;
        if (trim(raw).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw ParseError(source, lineno, "expected a JSON object");
        }
        auto field = [&](const char* name, bool required) -> std::optional<std::string> {
            auto it = j.find(name);
            if (it == j.end() || it->is_null()) {
                if (required) throw ParseError(source, lineno, std::string("missing field '") + name + "'");
                return std::nullopt;
            }
            if (!it->is_string()) {
                throw ParseError(source, lineno, std::string("field '") + name + "' must be a string");
            }
            return it->get<std::string>();
        };
        text::RawDocument d;
        try {
            d.id = text::normalize(*field("id", true), charmap).str();
            d.title = text::normalize(*field("title", true), charmap).str();
            d.body = text::normalize(*field("body", true), charmap).str();
        } catch (const InputError& e) {
            throw ParseError(source, lineno, e.what());
        }
        d.url = field("url", false);
        d.published_at = field("published_at", false);
        if (d.id.empty()) {
            throw InputError(source + ":" + std::to_string(lineno) + ": empty document id");
        }
        if (d.title.empty()) {
            throw InputError(source + ":" + std::to_string(lineno) + ": document '" + d.id + "' has an empty title");
        }
        docs.push_back(std::move(d));
    }
    return CorpusStore(std::move(docs));
}

CorpusStore ingest(const std::filesystem::path& path, const text::CharMap& charmap)
{
    return ingest_jsonl(read_file(path), charmap, path.string());
}

}  // namespace coper::app
