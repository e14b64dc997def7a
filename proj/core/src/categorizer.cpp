#include "peerscope/categorizer.hpp"

#include "peerscope/error.hpp"

namespace peerscope {
namespace {

// Year shares are compared with a small slack so that e.g. 7 of 10 years
// satisfies a 0.70 share despite binary rounding of 0.7 * 10.
constexpr double kShareSlack = 1e-9;

bool share_met(std::size_t hits, std::size_t years, double share) {
  return static_cast<double>(hits) + kShareSlack >= share * static_cast<double>(years);
}

}  // namespace

void CategoryThresholds::validate() const {
  for (double v : {high_rate, high_year_share, low_rate, low_year_share}) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error("category thresholds must lie in [0, 1]");
  }
}

AcceptanceSeries acceptance_series(const Corpus& corpus, std::string_view author) {
  if (!corpus.has_author(author)) {
    throw Error("author '" + std::string(author) + "' has no submissions");
  }
  std::map<int, SubmissionCounts> years;
  for (const auto* p : corpus.papers_of(author)) {
    auto& c = years[p->submission_year];
    ++c.submitted;
    if (p->accepted()) ++c.accepted;
  }
  AcceptanceSeries s;
  s.author_id = std::string(author);
  for (const auto& [year, c] : years) {
    s.per_year[year] = static_cast<double>(c.accepted) / static_cast<double>(c.submitted);
  }
  s.career_start = years.begin()->first;
  s.career_end = years.rbegin()->first;
  return s;
}

Category categorize(const AcceptanceSeries& series, const CategoryThresholds& t) {
  if (series.per_year.empty()) throw Error("acceptance series has no active years");
  std::size_t high_years = 0;
  std::size_t low_years = 0;
  for (const auto& [year, rate] : series.per_year) {
    if (rate > t.high_rate) ++high_years;
    if (rate < t.low_rate) ++low_years;
  }
  const std::size_t n = series.per_year.size();
  if (share_met(high_years, n, t.high_year_share)) return Category::High;
  if (share_met(low_years, n, t.low_year_share)) return Category::Low;
  return Category::Mid;
}

Labels categorize_all(const Corpus& corpus, const CategoryThresholds& thresholds) {
  thresholds.validate();
  Labels labels;
  for (const auto& author : corpus.authors()) {
    labels.emplace(author, categorize(acceptance_series(corpus, author), thresholds));
  }
  return labels;
}

std::array<std::size_t, kCategoryCount> category_counts(const Labels& labels) {
  std::array<std::size_t, kCategoryCount> counts{};
  for (const auto& [_, c] : labels) ++counts[index_of(c)];
  return counts;
}

}  // namespace peerscope
