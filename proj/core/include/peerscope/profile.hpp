#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"

namespace peerscope {

/// Author-profile feature family of one author.
struct ProfileFeatures {
  std::int64_t citation_total = 0;
  std::int64_t experience = 0;
  double topic_ratio = 0.0;
  std::int64_t h_index = 0;
  double team_size = 0.0;
};

struct CategoryProfileSummary {
  double citation_index = 0.0;  // standard deviation of member citation totals
  double mean_experience = 0.0;
  double topic_diversity = 0.0;  // mean topic ratio
  double mean_h_index = 0.0;
  double mean_team_size = 0.0;
  std::size_t members = 0;
};

struct ProfileOptions {
  /// Count only accepted papers toward experience.
  bool experience_accepted_only = false;
  /// Sample (n - 1) instead of population standard deviation for the citation index.
  bool sample_stddev = false;
};

/// Largest h such that at least h entries are >= h.
std::int64_t h_index(std::span<const std::int64_t> citations_per_paper);

/// Distinct topics over paper count. Throws Error on an empty list.
double topic_ratio(const PaperRefs& author_papers);

/// Mean author-list length. Throws Error on an empty list.
double team_size(const PaperRefs& author_papers);

ProfileFeatures author_profile(const Corpus& corpus, std::string_view author,
                               const ProfileOptions& options = {});

/// Throws Error when no author carries `category`.
CategoryProfileSummary category_summary(const Corpus& corpus, const Labels& labels,
                                        Category category, const ProfileOptions& options = {});

}  // namespace peerscope
