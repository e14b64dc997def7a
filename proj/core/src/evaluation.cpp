#include "peerscope/evaluation.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "peerscope/error.hpp"

namespace peerscope {

using detail::Json;
using detail::number;

EvalReport evaluate_predictions(std::span<const Category> truth,
                                std::span<const Category> predicted) {
  if (truth.empty()) throw Error("evaluation needs at least one test row");
  if (truth.size() != predicted.size()) throw Error("evaluation: prediction count mismatch");

  EvalReport r;
  r.samples = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++r.confusion[index_of(truth[i])][index_of(predicted[i])];
  }

  std::size_t correct = 0, present = 0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::size_t row = 0, col = 0;
    for (std::size_t k = 0; k < kCategoryCount; ++k) {
      row += r.confusion[c][k];
      col += r.confusion[k][c];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    correct += r.confusion[c][c];
    auto& m = r.per_class[c];
    m.support = row;
    if (col) m.precision = tp / static_cast<double>(col);
    if (row) m.recall = tp / static_cast<double>(row);
    if (row) {
      const double p = m.precision.value_or(0.0), q = *m.recall;
      m.f1 = p + q > 0.0 ? 2.0 * p * q / (p + q) : 0.0;
      f1_sum += *m.f1;
      ++present;
    }
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(r.samples);
  r.macro_f1 = f1_sum / static_cast<double>(present);
  return r;
}

EvalReport evaluate(const Model& model, const Dataset& test) {
  test.validate();
  const auto predicted = model.predict_all(test);
  auto report = evaluate_predictions(test.labels, predicted);
  report.model = std::string(model.kind());
  report.importances = rank_features(model.feature_names(), model.importances());
  return report;
}

std::vector<RankedFeature> rank_features(const std::vector<std::string>& names,
                                         const std::vector<double>& scores) {
  if (names.size() != scores.size()) throw Error("importance count differs from feature count");
  std::vector<RankedFeature> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.push_back({names[i], scores[i]});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.score > b.score || (a.score == b.score && a.feature < b.feature);
  });
  return out;
}

namespace detail {

Json eval_json(const EvalReport& report) {
  Json j;
  j["model"] = report.model;
  j["samples"] = report.samples;
  j["accuracy"] = number(report.accuracy);
  j["macro_f1"] = number(report.macro_f1);
  Json classes = Json::object();
  for (auto c : kAllCategories) {
    const auto& m = report.per_class[index_of(c)];
    classes[std::string(to_string(c))] = {{"precision", number(m.precision)},
                                          {"recall", number(m.recall)},
                                          {"f1", number(m.f1)},
                                          {"support", m.support}};
  }
  j["per_class"] = classes;
  Json labels = Json::array();
  for (auto c : kAllCategories) labels.push_back(std::string(to_string(c)));
  j["confusion_labels"] = labels;
  Json rows = Json::array();
  for (const auto& row : report.confusion) rows.push_back(row);
  j["confusion"] = rows;
  Json imp = Json::array();
  for (const auto& f : report.importances) {
    imp.push_back({{"feature", f.feature}, {"score", number(f.score)}});
  }
  j["importances"] = imp;
  return j;
}

}  // namespace detail

void write_json(const EvalReport& report, std::ostream& out) {
  out << detail::eval_json(report).dump(2) << '\n';
}

}  // namespace peerscope
