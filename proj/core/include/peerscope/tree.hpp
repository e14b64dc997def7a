#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "peerscope/model.hpp"
#include "peerscope/rng.hpp"

namespace peerscope {

struct TreeParams {
  std::size_t max_depth = 12;
  std::size_t min_leaf = 1;
  /// Features examined per split; 0 or >= d means all.
  std::size_t features_per_split = 0;
  std::uint64_t seed = 0;
};

/// CART classification tree with Gini splits. Leaves hold class
/// distributions; rows go left when value <= threshold.
class DecisionTree final : public Model {
 public:
  struct Node {
    int feature = -1;  // -1 for a leaf
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    ClassProbabilities proba{};
  };

  /// Trains on `sample` (row indexes into `data`, repeats allowed).
  static DecisionTree fit(const Dataset& data, std::span<const std::size_t> sample,
                          const TreeParams& params);
  /// Trains on every row once.
  static DecisionTree fit(const Dataset& data, const TreeParams& params);
  /// Same as above with an externally owned generator for feature sampling.
  static DecisionTree fit(const Dataset& data, std::span<const std::size_t> sample,
                          const TreeParams& params, Rng& rng);

  std::string_view kind() const noexcept override { return "decision_tree"; }
  ClassProbabilities predict_proba(std::span<const double> row) const override;
  std::vector<double> importances() const override;
  void save(std::ostream& out) const override;

  /// Unnormalized impurity decrease per feature.
  const std::vector<double>& raw_importances() const noexcept { return gain_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const;

  void write_body(std::ostream& out) const;
  static DecisionTree read_body(std::istream& in, std::vector<std::string> names);

 private:
  std::vector<Node> nodes_;
  std::vector<double> gain_;
};

/// Second-order regression tree used by gradient boosting.
class RegressionTree {
 public:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    double value = 0.0;
  };

  struct Params {
    std::size_t max_depth = 4;
    double lambda = 1.0;
    double min_child_weight = 1.0;
    double min_split_gain = 0.0;
  };

  /// Fits leaf weights -G/(H + lambda) to the gradient/hessian pairs of `sample`.
  static RegressionTree fit(const Dataset& data, std::span<const std::size_t> sample,
                            std::span<const double> grad, std::span<const double> hess,
                            const Params& params);

  double predict(std::span<const double> row) const;
  const std::vector<double>& gains() const noexcept { return gain_; }

  void write(std::ostream& out) const;
  static RegressionTree read(std::istream& in, std::size_t features);

 private:
  std::vector<Node> nodes_;
  std::vector<double> gain_;
};

}  // namespace peerscope
