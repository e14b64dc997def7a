#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "peerscope/categorizer.hpp"
#include "peerscope/ensemble.hpp"
#include "peerscope/evaluation.hpp"
#include "peerscope/features.hpp"

namespace peerscope {

struct PredictionConfig {
  FeatureOptions features;
  /// Share of eligible authors held out for testing.
  double test_fraction = 0.3;
  std::uint64_t seed = 0;
  ForestParams forest;
  BoostingParams gbt;

  /// Throws Error for a test fraction outside (0, 1).
  void validate() const;
};

struct AuthorSample {
  FeatureVector features;
  Category label = Category::Mid;
  bool test = false;
};

struct PredictionResult {
  /// Eligible authors in id order.
  std::vector<AuthorSample> samples;
  /// Authors whose careers are too short to be labeled.
  std::vector<std::string> excluded;
  Dataset train;
  Dataset test;
  RandomForest forest;
  GradientBoosting gbt;
  EvalReport forest_report;
  EvalReport gbt_report;
};

/// Authors whose career (first to last submission year) spans at least
/// split.label_year() years, in id order.
std::vector<std::string> eligible_authors(const Corpus& corpus, const SplitSpec& split,
                                          std::vector<std::string>* excluded = nullptr);

/// Builds window features for every eligible author, labels them with their
/// full-career category, holds out a seeded random share of authors, and
/// trains and evaluates both models. Throws Error when the training set
/// has fewer than two classes or either side of the split is empty.
PredictionResult run_prediction(const Corpus& corpus, const Labels& labels,
                                const PredictionConfig& config);

}  // namespace peerscope
