#include "coper/evalkit/trec.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <charconv>
#include <cmath>
#include <set>

namespace coper::evalkit {

namespace {

std::vector<std::string_view> fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Qrels parse_qrels(std::string_view text, const std::string& source)
{
    Qrels out;
    std::size_t lineno = 0;
    for (auto line : split(text, '\n')) {
        ++lineno;
        auto f = fields(line);
        if (f.empty()) continue;
        if (f.size() != 4) {
            throw ParseError(source, lineno, "expected 'qid iter docid grade'");
        }
        int grade = 0;
        if (!parse_number(f[3], grade)) {
            throw ParseError(source, lineno, "grade is not an integer");
        }
        if (grade < 0) {
            throw ParseError(source, lineno, "negative grade");
        }
        auto& q = out[std::string(f[0])];
        if (!q.emplace(std::string(f[2]), grade).second) {
            throw ParseError(source, lineno, "document '" + std::string(f[2]) + "' judged twice");
        }
    }
    return out;
}

Qrels load_qrels(const std::string& path) { return parse_qrels(read_file(path), path); }

Run parse_run(std::string_view text, const std::string& source)
{
    Run out;
    std::map<std::string, std::set<std::string, std::less<>>, std::less<>> seen;
    std::size_t lineno = 0;
    for (auto line : split(text, '\n')) {
        ++lineno;
        auto f = fields(line);
        if (f.empty()) continue;
        if (f.size() != 6) {
            throw ParseError(source, lineno, "expected 'qid Q0 docid rank score tag'");
        }
        RunEntry e;
        e.doc_id = std::string(f[2]);
        if (!parse_number(f[3], e.rank)) {
            throw ParseError(source, lineno, "rank is not a non-negative integer");
        }
        if (!parse_number(f[4], e.score) || !std::isfinite(e.score)) {
            throw ParseError(source, lineno, "score is not a finite number");
        }
        std::string qid(f[0]);
        auto& entries = out[qid];
        if (!entries.empty()) {
            if (e.rank <= entries.back().rank) {
                throw ParseError(source, lineno, "ranks must strictly increase within query '" + qid + "'");
            }
            if (e.score > entries.back().score) {
                throw ParseError(source, lineno, "scores must not increase within query '" + qid + "'");
            }
        }
        if (!seen[qid].insert(e.doc_id).second) {
            throw ParseError(source, lineno, "document '" + e.doc_id + "' listed twice for query '" + qid + "'");
        }
        entries.push_back(std::move(e));
    }
    return out;
}

Run load_run(const std::string& path) { return parse_run(read_file(path), path); }

std::string format_run(const Run& run, std::string_view tag)
{
    std::string out;
    for (const auto& [qid, entries] : run) {
        for (const auto& e : entries) {
            out += qid;
            out += " Q0 ";
            out += e.doc_id;
            out += ' ';
            out += std::to_string(e.rank);
            out += ' ';
            out += format6(e.score);
            out += ' ';
            out += tag;
            out += '\n';
        }
    }
    return out;
}

QuerySet parse_queries(std::string_view text, const std::string& source)
{
    QuerySet out;
    std::size_t lineno = 0;
    for (auto raw : split(text, '\n')) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(source, lineno, "expected query_id<TAB>query_text");
        }
        auto id = trim(line.substr(0, tab));
        auto q = trim(line.substr(tab + 1));
        if (id.empty() || q.empty()) {
            throw ParseError(source, lineno, "empty query id or text");
        }
        if (!out.emplace(std::string(id), std::string(q)).second) {
            throw ParseError(source, lineno, "duplicate query id '" + std::string(id) + "'");
        }
    }
    return out;
}

QuerySet load_queries(const std::string& path) { return parse_queries(read_file(path), path); }

std::vector<std::string> doc_ids(const std::vector<RunEntry>& entries)
{
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.doc_id);
    return out;
}

}  // namespace coper::evalkit
