#include <algorithm>
#include <cmath>
#include <set>

#include "model_stream.hpp"
#include "peerscope/ensemble.hpp"
#include "peerscope/error.hpp"
#include "peerscope/tree.hpp"

namespace peerscope {

using detail::expect_token;
using detail::read_double;
using detail::read_value;

void Dataset::add(std::vector<double> row, Category label) {
  rows.push_back(std::move(row));
  labels.push_back(label);
}

void Dataset::validate() const {
  if (rows.empty()) throw Error("dataset is empty");
  if (labels.size() != rows.size()) throw Error("dataset: label count differs from row count");
  if (feature_names.empty()) throw Error("dataset has no features");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != feature_names.size()) {
      throw Error("dataset row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                  " values, expected " + std::to_string(feature_names.size()));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) throw Error("dataset row " + std::to_string(i) + " is not finite");
    }
  }
}

std::size_t Dataset::class_count_present() const {
  return std::set<Category>(labels.begin(), labels.end()).size();
}

Category Model::predict(std::span<const double> row) const {
  const auto p = predict_proba(row);
  return static_cast<Category>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::vector<Category> Model::predict_all(const Dataset& data) const {
  std::vector<Category> out;
  out.reserve(data.size());
  for (const auto& row : data.rows) out.push_back(predict(row));
  return out;
}

std::unique_ptr<Model> load_model(std::istream& in) {
  expect_token(in, kModelMagic);
  const int version = read_value<int>(in, "format version");
  if (version != kModelFormatVersion) {
    throw Error("unsupported model format version " + std::to_string(version));
  }
  expect_token(in, "kind");
  const auto kind = read_value<std::string>(in, "kind");
  expect_token(in, "features");
  const auto count = read_value<std::size_t>(in, "feature count");
  std::vector<std::string> names(count);
  for (auto& name : names) name = read_value<std::string>(in, "feature name");

  if (kind == "decision_tree") {
    return std::make_unique<DecisionTree>(DecisionTree::read_body(in, std::move(names)));
  }
  if (kind == "random_forest") {
    auto forest = std::make_unique<RandomForest>();
    expect_token(in, "trees");
    const auto trees = read_value<std::size_t>(in, "tree count");
    if (trees == 0) throw Error("model stream: forest without trees");
    for (std::size_t t = 0; t < trees; ++t) forest->trees_.push_back(DecisionTree::read_body(in, names));
    forest->feature_names_ = std::move(names);
    return forest;
  }
  if (kind == "gradient_boosting") {
    auto gbt = std::make_unique<GradientBoosting>();
    expect_token(in, "learning_rate");
    gbt->learning_rate_ = read_double(in);
    expect_token(in, "base");
    for (auto& b : gbt->base_) b = read_double(in);
    expect_token(in, "rounds");
    const auto rounds = read_value<std::size_t>(in, "round count");
    for (std::size_t r = 0; r < rounds; ++r) {
      std::array<RegressionTree, kCategoryCount> round;
      for (auto& tree : round) tree = RegressionTree::read(in, count);
      gbt->rounds_.push_back(std::move(round));
    }
    expect_token(in, "loss");
    gbt->loss_.resize(rounds);
    for (auto& l : gbt->loss_) l = read_double(in);
    gbt->feature_names_ = std::move(names);
    return gbt;
  }
  throw Error("model stream: unknown model kind '" + kind + "'");
}

}  // namespace peerscope
