#include "coper/evalkit/metrics.hpp"

#include "coper/common/error.hpp"
#include "coper/common/util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

namespace coper::evalkit {

namespace {

void require_k(std::size_t k)
{
    if (k == 0) {
        throw PreconditionError("metric cutoff k must be >= 1");
    }
}

double gain(int grade) { return std::exp2(static_cast<double>(grade)) - 1.0; }

double discount(std::size_t rank) { return std::log2(static_cast<double>(rank) + 1.0); }

}  // namespace

RelevantSet relevant_set(const Grades& grades)
{
    RelevantSet out;
    for (const auto& [doc, g] : grades) {
        if (g > 0) out.insert(doc);
    }
    return out;
}

double precision_at_k(std::span<const std::string> ranked, const RelevantSet& rel, std::size_t k)
{
    require_k(k);
    auto n = std::min(k, ranked.size());
    auto hits = std::count_if(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n),
                              [&](const std::string& d) { return rel.contains(d); });
    return static_cast<double>(hits) / static_cast<double>(k);
}

double average_precision_at_k(std::span<const std::string> ranked, const RelevantSet& rel, std::size_t k)
{
    require_k(k);
    if (rel.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        if (rel.contains(ranked[i])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(std::min(rel.size(), k));
}

double ndcg_at_k(std::span<const std::string> ranked, const Grades& grades, std::size_t k)
{
    require_k(k);
    double dcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        auto it = grades.find(ranked[i]);
        if (it != grades.end() && it->second > 0) {
            dcg += gain(it->second) / discount(i + 1);
        }
    }
    std::vector<int> ideal;
    for (const auto& [doc, g] : grades) {
        if (g > 0) ideal.push_back(g);
    }
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    double idcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, ideal.size()); ++i) {
        idcg += gain(ideal[i]) / discount(i + 1);
    }
    if (idcg == 0.0) {
        return 1.0;
    }
    return dcg / idcg;
}

ConstantStsOracle::ConstantStsOracle(double grade) : m_grade(grade)
{
    if (!(grade >= 1.0 && grade <= 5.0)) {
        throw DomainError("STS grade must lie in [1,5]");
    }
}

FileStsOracle FileStsOracle::parse(std::string_view text, const std::string& source)
{
    FileStsOracle out;
    std::size_t lineno = 0;
    for (auto raw : split(text, '\n')) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto f = split(line, '\t');
        if (f.size() != 3) {
            throw ParseError(source, lineno, "expected query_id<TAB>doc_id<TAB>grade");
        }
        auto g = trim(f[2]);
        double grade = 0.0;
        auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
        if (ec != std::errc() || ptr != g.data() + g.size()) {
            throw ParseError(source, lineno, "grade is not a number");
        }
        if (!(grade >= 1.0 && grade <= 5.0)) {
            throw ParseError(source, lineno, "grade outside [1,5]");
        }
        out.m_grades[{std::string(trim(f[0])), std::string(trim(f[1]))}] = grade;
    }
    return out;
}

FileStsOracle FileStsOracle::load(const std::string& path) { return parse(read_file(path), path); }

double FileStsOracle::sts(std::string_view query_id, std::string_view, std::string_view doc_id) const
{
    auto it = m_grades.find({std::string(query_id), std::string(doc_id)});
    return it == m_grades.end() ? 1.0 : it->second;
}

std::optional<double> asts(std::string_view query_id, std::string_view query, std::span<const std::string> ranked,
                           const StsOracle& oracle, std::size_t k)
{
    require_k(k);
    auto n = std::min(k, ranked.size());
    if (n == 0) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double g = oracle.sts(query_id, query, ranked[i]);
        if (!(g >= 1.0 && g <= 5.0)) {
            throw DomainError("STS oracle returned " + std::to_string(g) + " for '" + ranked[i] + "'");
        }
        sum += g;
    }
    return sum / static_cast<double>(n);
}

}  // namespace coper::evalkit
