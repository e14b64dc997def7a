#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"

namespace peerscope {

/// Per-year acceptance rates of one author. Only years with at least one
/// submission appear in `per_year`.
struct AcceptanceSeries {
  std::string author_id;
  std::map<int, double> per_year;
  int career_start = 0;
  int career_end = 0;
};

/// Rate thresholds are strict (`>` high_rate, `<` low_rate); the year-share
/// conditions are inclusive ("at least").
struct CategoryThresholds {
  double high_rate = 0.7;
  double high_year_share = 0.70;
  double low_rate = 0.4;
  double low_year_share = 0.80;

  /// Throws Error when a value lies outside [0, 1].
  void validate() const;
};

/// Throws Error when the author has no submissions.
AcceptanceSeries acceptance_series(const Corpus& corpus, std::string_view author);

/// High is tested before Low; Mid is the remainder.
Category categorize(const AcceptanceSeries& series, const CategoryThresholds& thresholds = {});

Labels categorize_all(const Corpus& corpus, const CategoryThresholds& thresholds = {});

std::array<std::size_t, kCategoryCount> category_counts(const Labels& labels);

}  // namespace peerscope
