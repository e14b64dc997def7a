#include "peerscope/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "peerscope/error.hpp"
#include "peerscope/rng.hpp"

namespace peerscope {

void PredictionConfig::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error("test_fraction must lie in (0, 1)");
  }
  features.split.validate();
  forest.validate();
  gbt.validate();
}

std::vector<std::string> eligible_authors(const Corpus& corpus, const SplitSpec& split,
                                          std::vector<std::string>* excluded) {
  std::vector<std::string> out;
  for (const auto& author : corpus.authors()) {
    const auto papers = corpus.papers_of(author);
    auto [lo, hi] = std::minmax_element(papers.begin(), papers.end(), [](auto* a, auto* b) {
      return a->submission_year < b->submission_year;
    });
    const int span = (*hi)->submission_year - (*lo)->submission_year + 1;
    if (span >= split.label_year()) {
      out.push_back(author);
    } else if (excluded) {
      excluded->push_back(author);
    }
  }
  return out;
}

PredictionResult run_prediction(const Corpus& corpus, const Labels& labels,
                                const PredictionConfig& config) {
  config.validate();
  PredictionResult result;
  const auto authors = eligible_authors(corpus, config.features.split, &result.excluded);
  if (authors.size() < 2) throw Error("prediction needs at least two eligible authors");

  // Held-out authors: seeded shuffle of the sorted id list.
  std::vector<std::size_t> order(authors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(config.seed, 0));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const auto test_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(config.test_fraction * static_cast<double>(authors.size()))),
      1, authors.size() - 1);
  std::vector<bool> is_test(authors.size(), false);
  for (std::size_t i = 0; i < test_count; ++i) is_test[order[i]] = true;

  FeatureBuilder builder(corpus, config.features);
  result.train.feature_names = feature_names();
  result.test.feature_names = feature_names();
  for (std::size_t i = 0; i < authors.size(); ++i) {
    auto it = labels.find(authors[i]);
    if (it == labels.end()) throw Error("author '" + authors[i] + "' has no category label");
    AuthorSample s{builder.build(authors[i]), it->second, is_test[i]};
    (s.test ? result.test : result.train).add(s.features.values, s.label);
    result.samples.push_back(std::move(s));
  }
  if (result.train.class_count_present() < 2) {
    throw Error("training split holds a single category; need at least two");
  }

  auto forest_params = config.forest;
  forest_params.seed = derive_seed(config.seed, 1);
  auto gbt_params = config.gbt;
  gbt_params.seed = derive_seed(config.seed, 2);
  result.forest = train_random_forest(result.train, forest_params);
  result.gbt = train_gbt(result.train, gbt_params);
  result.forest_report = evaluate(result.forest, result.test);
  result.gbt_report = evaluate(result.gbt, result.test);
  return result;
}

}  // namespace peerscope
