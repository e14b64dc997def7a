#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "peerscope/model.hpp"
#include "peerscope/tree.hpp"

namespace peerscope {

struct ForestParams {
  std::size_t trees = 200;
  std::size_t max_depth = 12;
  std::size_t min_leaf = 1;
  /// 0 selects floor(sqrt(d)).
  std::size_t features_per_split = 0;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void validate() const;
};

/// Bagged CART trees; probabilities are averaged over trees. Tree t draws
/// from its own stream derive_seed(seed, t), so results do not depend on
/// the thread count.
class RandomForest final : public Model {
 public:
  std::string_view kind() const noexcept override { return "random_forest"; }
  ClassProbabilities predict_proba(std::span<const double> row) const override;
  std::vector<double> importances() const override;
  void save(std::ostream& out) const override;

  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }

  friend RandomForest train_random_forest(const Dataset& data, const ForestParams& params);
  friend std::unique_ptr<Model> load_model(std::istream& in);

 private:
  std::vector<DecisionTree> trees_;
};

/// Throws Error for single-class data or invalid parameters.
RandomForest train_random_forest(const Dataset& data, const ForestParams& params);

struct BoostingParams {
  std::size_t rounds = 300;
  double learning_rate = 0.1;
  std::size_t max_depth = 4;
  double lambda = 1.0;
  double min_child_weight = 1.0;
  /// Row fraction drawn (without replacement) per round.
  double subsample = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Softmax gradient-boosted trees: one regression tree per class per round,
/// Newton leaf weights, shrinkage by the learning rate.
class GradientBoosting final : public Model {
 public:
  std::string_view kind() const noexcept override { return "gradient_boosting"; }
  ClassProbabilities predict_proba(std::span<const double> row) const override;
  std::vector<double> importances() const override;
  void save(std::ostream& out) const override;

  /// Mean training cross-entropy after each round.
  const std::vector<double>& training_loss() const noexcept { return loss_; }
  std::size_t rounds() const noexcept { return rounds_.size(); }

  friend GradientBoosting train_gbt(const Dataset& data, const BoostingParams& params);
  friend std::unique_ptr<Model> load_model(std::istream& in);

 private:
  ClassProbabilities raw_scores(std::span<const double> row) const;

  double learning_rate_ = 0.1;
  ClassProbabilities base_{};
  std::vector<std::array<RegressionTree, kCategoryCount>> rounds_;
  std::vector<double> loss_;
};

/// Throws Error for single-class data or invalid parameters (including a
/// zero learning rate).
GradientBoosting train_gbt(const Dataset& data, const BoostingParams& params);

}  // namespace peerscope
