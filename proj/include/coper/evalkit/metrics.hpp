#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coper::evalkit {

using RelevantSet = std::set<std::string, std::less<>>;
using Grades = std::map<std::string, int, std::less<>>;

/// Docs with grade >= 1.
RelevantSet relevant_set(const Grades& grades);

/// |relevant ∩ top-k| / k. The denominator stays k when fewer results exist.
double precision_at_k(std::span<const std::string> ranked, const RelevantSet& rel, std::size_t k);

/// Sum of precision@i over relevant positions i <= k, divided by
/// min(|rel|, k); 0 when rel is empty.
double average_precision_at_k(std::span<const std::string> ranked, const RelevantSet& rel, std::size_t k);

/// Exponential-gain nDCG with log2(i+1) discount. Unjudged docs have grade
/// 0; an ideal DCG of 0 gives 1.
double ndcg_at_k(std::span<const std::string> ranked, const Grades& grades, std::size_t k);

/// Grades a (query, document) pair on the 1..5 similarity scale.
class StsOracle {
  public:
    virtual ~StsOracle() = default;
    virtual double sts(std::string_view query_id, std::string_view query, std::string_view doc_id) const = 0;
};

class ConstantStsOracle final : public StsOracle {
  public:
    explicit ConstantStsOracle(double grade);
    double sts(std::string_view, std::string_view, std::string_view) const override { return m_grade; }

  private:
    double m_grade;
};

/// TSV `query_id<TAB>doc_id<TAB>grade`; pairs not listed grade 1.0.
class FileStsOracle final : public StsOracle {
  public:
    static FileStsOracle parse(std::string_view text, const std::string& source = "<sts>");
    static FileStsOracle load(const std::string& path);

    double sts(std::string_view query_id, std::string_view query, std::string_view doc_id) const override;
    std::size_t size() const noexcept { return m_grades.size(); }

  private:
    std::map<std::pair<std::string, std::string>, double> m_grades;
};

/// Mean oracle grade over the top-k results; nullopt for an empty list.
std::optional<double> asts(std::string_view query_id, std::string_view query, std::span<const std::string> ranked,
                           const StsOracle& oracle, std::size_t k);

}  // namespace coper::evalkit
