#include "coper/app/report.hpp"

#include "coper/common/util.hpp"
#include "coper/textproc/normalize.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>

namespace coper::app {

namespace {

std::string str(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

bool is_month(std::string_view s)
{
    if (s.size() < 7 || s[4] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    return month >= 1 && month <= 12 && (s.size() == 7 || s[7] == '-' || s[7] == 'T' || s[7] == ' ');
}

std::vector<std::string_view> words_of(std::string_view phrase)
{
    std::vector<std::string_view> out;
    for (auto w : split(phrase, ' ')) {
        if (!w.empty()) out.push_back(w);
    }
    return out;
}

}  // namespace

SearchOutput run_search(const EngineState& state, std::string_view query, std::optional<std::size_t> k,
                        std::optional<double> omega)
{
    SearchOutput out;
    out.query = std::string(query);
    out.results = state.engine->search(query, k.value_or(state.config.top_k), omega);
    out.omega = omega ? *omega : state.engine->analyze(query).omega;
    return out;
}

std::string snippet(std::string_view body, std::size_t n)
{
    std::size_t i = 0, count = 0;
    while (i < body.size() && count < n) {
        auto c = static_cast<unsigned char>(body[i]);
        std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
        i = std::min(body.size(), i + len);
        ++count;
    }
    return std::string(body.substr(0, i));
}

std::string search_json(const EngineState& state, const SearchOutput& out)
{
    std::string s = "{\"query\":" + str(out.query) + ",\"omega\":" + format6(out.omega) + ",\"results\":[";
    for (std::size_t i = 0; i < out.results.size(); ++i) {
        const auto& r = out.results[i];
        const auto* doc = state.corpus->find(r.doc_id);
        if (i) s += ',';
        s += "{\"doc_id\":" + str(r.doc_id);
        s += ",\"title\":" + str(doc ? doc->title : "");
        s += ",\"rank\":" + std::to_string(r.rank);
        s += ",\"jss\":" + format6(r.jss);
        s += ",\"bm25\":" + format6(r.bm25);
        s += ",\"tfidf_sim\":" + format6(r.tfidf_sim);
        s += ",\"sem_sim\":" + format6(r.sem_sim);
        s += ",\"snippet\":" + str(doc ? snippet(doc->body) : "");
        s += '}';
    }
    s += "]}";
    return s;
}

std::string doc_json(const EngineState& state, const text::RawDocument& doc)
{
    nlohmann::ordered_json j;
    j["id"] = doc.id;
    j["title"] = doc.title;
    j["body"] = doc.body;
    j["url"] = doc.url ? nlohmann::ordered_json(*doc.url) : nlohmann::ordered_json(nullptr);
    j["published_at"] = doc.published_at ? nlohmann::ordered_json(*doc.published_at) : nlohmann::ordered_json(nullptr);
    j["noun_phrases"] = nlohmann::ordered_json::array();
    if (auto it = state.keywords.find(doc.id); it != state.keywords.end()) {
        for (const auto& p : it->second) j["noun_phrases"].push_back(p.text);
    }
    return j.dump();
}

std::string stats_json(const EngineState& state)
{
    const auto& lex = state.engine->lexical_index();
    std::string s = "{\"documents\":" + std::to_string(lex.num_docs());
    s += ",\"vocabulary\":" + std::to_string(lex.vocabulary_size());
    s += ",\"avgdl\":" + format6(lex.avgdl());
    s += ",\"snapshot\":" + str(state.corpus->snapshot().hex());
    s += ",\"config_fingerprint\":" + str(state.config.fingerprint());
    s += ",\"embed_dim\":" + std::to_string(state.config.embed_dim);
    s += ",\"pool\":" + std::to_string(state.config.pool);
    s += ",\"top_k\":" + std::to_string(state.config.top_k);
    s += '}';
    return s;
}

CorpusStats corpus_stats(const CorpusStore& corpus, const KeywordTable& keywords, const text::TextPipeline& pipeline,
                         std::size_t top)
{
    CorpusStats stats;
    std::map<std::string, std::map<std::string, std::size_t>> per_month;
    for (const auto& doc : corpus.docs()) {
        DocWordCounts c;
        c.doc_id = doc.id;
        for (const auto& t : pipeline.analyze(doc.body)) {
            if (!t.is_punct()) ++c.body_words;
        }
        const std::vector<StoredPhrase>* phrases = nullptr;
        if (auto it = keywords.find(doc.id); it != keywords.end()) phrases = &it->second;
        bool dated = doc.published_at && is_month(*doc.published_at);
        if (phrases) {
            for (const auto& p : *phrases) {
                for (auto w : words_of(p.text)) {
                    ++c.phrase_words;
                    if (dated) ++per_month[doc.published_at->substr(0, 7)][std::string(w)];
                }
            }
        }
        stats.counts.push_back(std::move(c));
    }
    for (auto& [month, counts] : per_month) {
        MonthlyTopWords row;
        row.month = month;
        row.words.assign(counts.begin(), counts.end());
        std::stable_sort(row.words.begin(), row.words.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        if (row.words.size() > top) row.words.resize(top);
        stats.monthly.push_back(std::move(row));
    }
    return stats;
}

std::string monthly_tsv(const CorpusStats& stats)
{
    std::string out = "month\trank\tword\tcount\n";
    for (const auto& m : stats.monthly) {
        for (std::size_t i = 0; i < m.words.size(); ++i) {
            out += m.month + "\t" + std::to_string(i + 1) + "\t" + m.words[i].first + "\t" +
                   std::to_string(m.words[i].second) + "\n";
        }
    }
    return out;
}

std::string counts_tsv(const CorpusStats& stats)
{
    std::string out = "doc_id\tbody_words\tphrase_words\n";
    for (const auto& c : stats.counts) {
        out += c.doc_id + "\t" + std::to_string(c.body_words) + "\t" + std::to_string(c.phrase_words) + "\n";
    }
    return out;
}

std::string corpus_stats_json(const CorpusStats& stats)
{
    nlohmann::ordered_json j;
    j["monthly_top_words"] = nlohmann::ordered_json::array();
    for (const auto& m : stats.monthly) {
        nlohmann::ordered_json row;
        row["month"] = m.month;
        row["words"] = nlohmann::ordered_json::array();
        for (const auto& [w, n] : m.words) row["words"].push_back({{"word", w}, {"count", n}});
        j["monthly_top_words"].push_back(row);
    }
    j["word_counts"] = nlohmann::ordered_json::array();
    for (const auto& c : stats.counts) {
        j["word_counts"].push_back(
            {{"doc_id", c.doc_id}, {"body_words", c.body_words}, {"phrase_words", c.phrase_words}});
    }
    return j.dump(2) + "\n";
}

}  // namespace coper::app
