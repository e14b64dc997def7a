#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/model.hpp"

namespace peerscope {

struct ClassMetrics {
  std::optional<double> precision;  // absent when the class is never predicted
  std::optional<double> recall;     // absent when the class has no test rows
  std::optional<double> f1;         // present whenever the class has test rows
  std::size_t support = 0;
};

struct RankedFeature {
  std::string feature;
  double score = 0.0;
};

/// Confusion rows are true classes, columns predicted classes.
struct EvalReport {
  std::string model;
  std::size_t samples = 0;
  std::array<ClassMetrics, kCategoryCount> per_class{};
  std::array<std::array<std::size_t, kCategoryCount>, kCategoryCount> confusion{};
  double accuracy = 0.0;
  /// Mean F1 over classes present in the test set.
  double macro_f1 = 0.0;
  std::vector<RankedFeature> importances;  // descending score, ties by name
};

/// Throws Error when the inputs are empty or differ in length.
EvalReport evaluate_predictions(std::span<const Category> truth,
                                std::span<const Category> predicted);

/// Scores `model` on `test` and attaches its ranked importances.
EvalReport evaluate(const Model& model, const Dataset& test);

std::vector<RankedFeature> rank_features(const std::vector<std::string>& names,
                                         const std::vector<double>& scores);

/// JSON object with every report field; absent metrics are null.
void write_json(const EvalReport& report, std::ostream& out);

}  // namespace peerscope
