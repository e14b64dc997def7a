#include "peerscope/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "model_stream.hpp"
#include "peerscope/error.hpp"
#include "peerscope/format.hpp"

namespace peerscope {
namespace {

constexpr double kMinHessian = 1e-16;
constexpr double kMinProbability = 1e-15;
constexpr double kMinPrior = 1e-6;

ClassProbabilities softmax(const ClassProbabilities& z) {
  const double m = *std::max_element(z.begin(), z.end());
  ClassProbabilities p{};
  double sum = 0.0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) sum += p[c] = std::exp(z[c] - m);
  for (auto& v : p) v /= sum;
  return p;
}

}  // namespace

void BoostingParams::validate() const {
  if (rounds == 0) throw Error("gbt: rounds must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error("gbt: learning_rate must be positive");
  }
  if (max_depth == 0) throw Error("gbt: max_depth must be >= 1");
  if (lambda < 0.0) throw Error("gbt: lambda must be non-negative");
  if (min_child_weight < 0.0) throw Error("gbt: min_child_weight must be non-negative");
  if (!(subsample > 0.0 && subsample <= 1.0)) throw Error("gbt: subsample must lie in (0, 1]");
}

GradientBoosting train_gbt(const Dataset& data, const BoostingParams& params) {
  params.validate();
  data.validate();
  if (data.class_count_present() < 2) throw Error("gbt: need at least two classes");

  const std::size_t n = data.size();
  GradientBoosting model;
  model.feature_names_ = data.feature_names;
  model.learning_rate_ = params.learning_rate;

  ClassProbabilities prior{};
  for (auto label : data.labels) prior[index_of(label)] += 1.0;
  for (auto& b : prior) b = std::log(std::max(b / static_cast<double>(n), kMinPrior));
  model.base_ = prior;

  std::vector<ClassProbabilities> score(n, model.base_);
  std::vector<double> grad(n), hess(n);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto take = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(params.subsample * static_cast<double>(n))));

  RegressionTree::Params tp;
  tp.max_depth = params.max_depth;
  tp.lambda = params.lambda;
  tp.min_child_weight = params.min_child_weight;

  for (std::size_t round = 0; round < params.rounds; ++round) {
    std::vector<std::size_t> sample = all;
    if (take < n) {
      Rng rng(derive_seed(params.seed, round));
      for (std::size_t i = 0; i < take; ++i) std::swap(sample[i], sample[i + rng.below(n - i)]);
      sample.resize(take);
      std::sort(sample.begin(), sample.end());
    }

    std::vector<ClassProbabilities> proba(n);
    for (std::size_t i = 0; i < n; ++i) proba[i] = softmax(score[i]);

    std::array<RegressionTree, kCategoryCount> trees;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double p = proba[i][c];
        grad[i] = p - (index_of(data.labels[i]) == c ? 1.0 : 0.0);
        hess[i] = std::max(p * (1.0 - p), kMinHessian);
      }
      trees[c] = RegressionTree::fit(data, sample, grad, hess, tp);
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < kCategoryCount; ++c) {
        score[i][c] += params.learning_rate * trees[c].predict(data.rows[i]);
      }
      const double p = softmax(score[i])[index_of(data.labels[i])];
      loss -= std::log(std::max(p, kMinProbability));
    }
    model.loss_.push_back(loss / static_cast<double>(n));
    model.rounds_.push_back(std::move(trees));
  }
  return model;
}

ClassProbabilities GradientBoosting::raw_scores(std::span<const double> row) const {
  ClassProbabilities z = base_;
  for (const auto& round : rounds_) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) z[c] += learning_rate_ * round[c].predict(row);
  }
  return z;
}

ClassProbabilities GradientBoosting::predict_proba(std::span<const double> row) const {
  return softmax(raw_scores(row));
}

std::vector<double> GradientBoosting::importances() const {
  std::vector<double> out(feature_names_.size(), 0.0);
  for (const auto& round : rounds_) {
    for (const auto& tree : round) {
      for (std::size_t f = 0; f < out.size(); ++f) out[f] += tree.gains()[f];
    }
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& v : out) v = total > 0.0 ? v / total : 1.0 / static_cast<double>(out.size());
  return out;
}

void GradientBoosting::save(std::ostream& out) const {
  detail::write_header(out, kind(), feature_names_);
  out << "learning_rate " << format_exact(learning_rate_) << "\nbase";
  for (double b : base_) out << ' ' << format_exact(b);
  out << "\nrounds " << rounds_.size() << '\n';
  for (const auto& round : rounds_) {
    for (const auto& tree : round) tree.write(out);
  }
  out << "loss";
  for (double l : loss_) out << ' ' << format_exact(l);
  out << '\n';
}

}  // namespace peerscope
