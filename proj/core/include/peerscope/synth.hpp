#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"

namespace peerscope {

/// Per-category arrays are indexed High, Mid, Low (the intended category).
struct SynthConfig {
  std::uint64_t seed = 7;
  std::array<std::size_t, kCategoryCount> authors{20, 20, 20};

  int first_year = 2000;
  int years = 12;
  int min_career_years = 5;

  // Papers led per active author-year and co-authors per paper.
  std::size_t lead_papers_min = 4;
  std::size_t lead_papers_max = 5;
  std::size_t coauthors_min = 1;
  std::size_t coauthors_max = 2;
  /// Chance that a co-author is drawn from another intended category.
  double cross_category_coauthor = 0.05;

  /// Decision probability, taken from the lead author's intent.
  std::array<double, kCategoryCount> accept_probability{0.9, 0.55, 0.15};

  // Assignment. A paper is routed by the highest-ranked intent among its
  // authors: with that category's concentration it draws from the
  // category's dedicated subpool, otherwise from the general pool.
  std::size_t reviewer_pool = 1000;
  std::size_t editor_pool = 200;
  std::size_t reviewers_min = 2;
  std::size_t reviewers_max = 3;
  std::array<double, kCategoryCount> reviewer_concentration{1.0, 1.0, 0.0};
  std::array<double, kCategoryCount> editor_concentration{1.0, 1.0, 0.0};
  std::array<std::size_t, kCategoryCount> reviewer_subpool{5, 100, 0};
  std::array<std::size_t, kCategoryCount> editor_subpool{1, 40, 0};
  /// Chance that an accepted paper goes through a second review round.
  double second_round = 0.5;

  // Citations to earlier accepted papers; rows are the citing lead intent,
  // columns the cited lead intent.
  std::size_t citations_min = 2;
  std::size_t citations_max = 6;
  std::array<std::array<double, kCategoryCount>, kCategoryCount> citation_weight{{
      {0.6, 0.3, 0.1}, {0.4, 0.4, 0.2}, {0.3, 0.3, 0.4}}};
  // Heavy-tailed external citations: floor(Pareto(scale, shape) - scale).
  double citation_tail_scale = 4.0;
  double citation_tail_shape = 1.5;

  /// Share of positive review sentences, by the lead author's intent.
  std::array<double, kCategoryCount> positive_review{0.8, 0.55, 0.25};

  /// Throws Error for infeasible values.
  void validate() const;
};

/// Plain `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed values throw ValidationError.
SynthConfig parse_synth_config(std::istream& in, const std::string& name = "<config>");
SynthConfig load_synth_config(const std::filesystem::path& path);
/// Every key, in a fixed order, so the output parses back to the same config.
void write_synth_config(const SynthConfig& config, std::ostream& out);

struct SynthCorpus {
  Corpus corpus;
  Labels intents;  // planted category per author
};

/// Pure function of the config. Throws Error for an invalid config.
SynthCorpus generate(const SynthConfig& config);

/// author_id,intent
void write_intents_csv(const Labels& intents, std::ostream& out);

}  // namespace peerscope
