#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peerscope/category.hpp"

namespace peerscope {

/// Dense feature matrix with class labels (Category index order).
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<Category> labels;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t feature_count() const noexcept { return feature_names.size(); }
  void add(std::vector<double> row, Category label);

  /// Throws Error when empty, ragged, or containing non-finite values.
  void validate() const;
  /// Number of distinct labels present.
  std::size_t class_count_present() const;
};

using ClassProbabilities = std::array<double, kCategoryCount>;

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view kind() const noexcept = 0;
  virtual ClassProbabilities predict_proba(std::span<const double> row) const = 0;
  /// Non-negative, sums to 1, aligned with feature_names().
  virtual std::vector<double> importances() const = 0;
  virtual void save(std::ostream& out) const = 0;

  /// Highest-probability class; ties go to the lower class index.
  Category predict(std::span<const double> row) const;
  std::vector<Category> predict_all(const Dataset& data) const;

  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

 protected:
  std::vector<std::string> feature_names_;
};

/// Reads any model written by Model::save. Throws Error on a malformed
/// stream or an unsupported format version.
std::unique_ptr<Model> load_model(std::istream& in);

inline constexpr std::string_view kModelMagic = "peerscope-model";
inline constexpr int kModelFormatVersion = 1;

}  // namespace peerscope
