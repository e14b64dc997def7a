#include "peerscope/ensemble.hpp"

#include <cmath>
#include <numeric>

#include "model_stream.hpp"
#include "peerscope/error.hpp"
#include "peerscope/parallel.hpp"

namespace peerscope {

void ForestParams::validate() const {
  if (trees == 0) throw Error("random forest: trees must be >= 1");
  if (max_depth == 0) throw Error("random forest: max_depth must be >= 1");
  if (min_leaf == 0) throw Error("random forest: min_leaf must be >= 1");
}

RandomForest train_random_forest(const Dataset& data, const ForestParams& params) {
  params.validate();
  data.validate();
  if (data.class_count_present() < 2) throw Error("random forest: need at least two classes");

  TreeParams tp;
  tp.max_depth = params.max_depth;
  tp.min_leaf = params.min_leaf;
  tp.features_per_split = params.features_per_split;
  if (tp.features_per_split == 0) {
    tp.features_per_split = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::sqrt(static_cast<double>(data.feature_count()))));
  }

  RandomForest forest;
  forest.feature_names_ = data.feature_names;
  forest.trees_.resize(params.trees);
  parallel_for(params.trees, params.threads, [&](std::size_t t) {
    Rng rng(derive_seed(params.seed, t));
    std::vector<std::size_t> sample(data.size());
    if (params.bootstrap) {
      for (auto& s : sample) s = rng.below(data.size());
    } else {
      std::iota(sample.begin(), sample.end(), 0);
    }
    forest.trees_[t] = DecisionTree::fit(data, sample, tp, rng);
  });
  return forest;
}

ClassProbabilities RandomForest::predict_proba(std::span<const double> row) const {
  ClassProbabilities sum{};
  for (const auto& tree : trees_) {
    const auto p = tree.predict_proba(row);
    for (std::size_t c = 0; c < kCategoryCount; ++c) sum[c] += p[c];
  }
  for (auto& v : sum) v /= static_cast<double>(trees_.size());
  return sum;
}

std::vector<double> RandomForest::importances() const {
  std::vector<double> out(feature_names_.size(), 0.0);
  for (const auto& tree : trees_) {
    const auto imp = tree.importances();
    for (std::size_t f = 0; f < out.size(); ++f) out[f] += imp[f];
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& v : out) v = total > 0.0 ? v / total : 1.0 / static_cast<double>(out.size());
  return out;
}

void RandomForest::save(std::ostream& out) const {
  detail::write_header(out, kind(), feature_names_);
  out << "trees " << trees_.size() << '\n';
  for (const auto& tree : trees_) tree.write_body(out);
}

}  // namespace peerscope
