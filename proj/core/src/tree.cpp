#include "peerscope/tree.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <string>

#include "peerscope/error.hpp"
#include "peerscope/format.hpp"
#include "model_stream.hpp"

namespace peerscope {
namespace {

using detail::expect_token;
using detail::read_double;
using detail::read_value;

constexpr double kMinGain = 1e-12;

using Counts = std::array<double, kCategoryCount>;

/// n * Gini impurity = n - sum(c^2) / n
double weighted_gini(const Counts& c, double n) {
  if (n <= 0.0) return 0.0;
  double sq = 0.0;
  for (double x : c) sq += x * x;
  return n - sq / n;
}

double midpoint(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t < b ? t : a;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const TreeParams& params, Rng& rng,
              std::vector<DecisionTree::Node>& nodes, std::vector<double>& gain)
      : data_(data), params_(params), rng_(rng), nodes_(nodes), gain_(gain) {
    all_features_.resize(data.feature_count());
    std::iota(all_features_.begin(), all_features_.end(), 0);
  }

  std::size_t build(std::vector<std::size_t>& idx, std::size_t depth) {
    Counts counts{};
    for (auto i : idx) counts[index_of(data_.labels[i])] += 1.0;
    const double n = static_cast<double>(idx.size());

    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    for (std::size_t c = 0; c < kCategoryCount; ++c) nodes_[id].proba[c] = counts[c] / n;

    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    if (pure || depth >= params_.max_depth || idx.size() < 2 * params_.min_leaf) return id;

    const Split split = best_split(idx, counts);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto i : idx) {
      (data_.rows[i][split.feature] <= split.threshold ? left : right).push_back(i);
    }
    gain_[split.feature] += split.gain;
    idx.clear();
    idx.shrink_to_fit();

    nodes_[id].feature = split.feature;
    nodes_[id].threshold = split.threshold;
    const std::size_t l = build(left, depth + 1);
    const std::size_t r = build(right, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

 private:
  std::vector<std::size_t> candidate_features() {
    const std::size_t d = all_features_.size();
    const std::size_t k = params_.features_per_split;
    if (k == 0 || k >= d) return all_features_;
    std::vector<std::size_t> f = all_features_;
    for (std::size_t i = 0; i < k; ++i) std::swap(f[i], f[i + rng_.below(d - i)]);
    f.resize(k);
    std::sort(f.begin(), f.end());
    return f;
  }

  Split best_split(const std::vector<std::size_t>& idx, const Counts& counts) {
    const double n = static_cast<double>(idx.size());
    const double parent = weighted_gini(counts, n);
    Split best;
    std::vector<std::size_t> order(idx);
    for (std::size_t f : candidate_features()) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = data_.rows[a][f], vb = data_.rows[b][f];
        return va < vb || (va == vb && a < b);
      });
      Counts left{};
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        left[index_of(data_.labels[order[k]])] += 1.0;
        const double a = data_.rows[order[k]][f];
        const double b = data_.rows[order[k + 1]][f];
        if (!(a < b)) continue;
        const std::size_t nl = k + 1, nr = order.size() - nl;
        if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
        Counts right{};
        for (std::size_t c = 0; c < kCategoryCount; ++c) right[c] = counts[c] - left[c];
        const double g = parent - weighted_gini(left, static_cast<double>(nl)) -
                         weighted_gini(right, static_cast<double>(nr));
        if (g > best.gain + kMinGain) best = {static_cast<int>(f), midpoint(a, b), g};
      }
    }
    return best;
  }

  const Dataset& data_;
  const TreeParams& params_;
  Rng& rng_;
  std::vector<DecisionTree::Node>& nodes_;
  std::vector<double>& gain_;
  std::vector<std::size_t> all_features_;
};

std::size_t walk_depth(const std::vector<DecisionTree::Node>& nodes, std::size_t id) {
  if (nodes[id].feature < 0) return 0;
  return 1 + std::max(walk_depth(nodes, nodes[id].left), walk_depth(nodes, nodes[id].right));
}

}  // namespace

DecisionTree DecisionTree::fit(const Dataset& data, std::span<const std::size_t> sample,
                               const TreeParams& params, Rng& rng) {
  data.validate();
  if (sample.empty()) throw Error("decision tree: empty training sample");
  if (params.min_leaf == 0) throw Error("decision tree: min_leaf must be >= 1");
  DecisionTree tree;
  tree.feature_names_ = data.feature_names;
  tree.gain_.assign(data.feature_count(), 0.0);
  std::vector<std::size_t> idx(sample.begin(), sample.end());
  TreeBuilder(data, params, rng, tree.nodes_, tree.gain_).build(idx, 0);
  return tree;
}

DecisionTree DecisionTree::fit(const Dataset& data, std::span<const std::size_t> sample,
                               const TreeParams& params) {
  Rng rng(params.seed);
  return fit(data, sample, params, rng);
}

DecisionTree DecisionTree::fit(const Dataset& data, const TreeParams& params) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), 0);
  return fit(data, all, params);
}

ClassProbabilities DecisionTree::predict_proba(std::span<const double> row) const {
  std::size_t id = 0;
  while (nodes_[id].feature >= 0) {
    const auto& node = nodes_[id];
    id = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].proba;
}

std::vector<double> DecisionTree::importances() const {
  std::vector<double> out = gain_;
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& v : out) v = total > 0.0 ? v / total : 1.0 / static_cast<double>(out.size());
  return out;
}

std::size_t DecisionTree::depth() const { return nodes_.empty() ? 0 : walk_depth(nodes_, 0); }

void DecisionTree::write_body(std::ostream& out) const {
  out << "nodes " << nodes_.size() << '\n';
  for (const auto& n : nodes_) {
    out << n.feature << ' ' << format_exact(n.threshold) << ' ' << n.left << ' ' << n.right;
    for (double p : n.proba) out << ' ' << format_exact(p);
    out << '\n';
  }
  out << "gain";
  for (double g : gain_) out << ' ' << format_exact(g);
  out << '\n';
}

DecisionTree DecisionTree::read_body(std::istream& in, std::vector<std::string> names) {
  DecisionTree tree;
  tree.feature_names_ = std::move(names);
  expect_token(in, "nodes");
  const auto count = read_value<std::size_t>(in, "node count");
  tree.nodes_.resize(count);
  for (auto& n : tree.nodes_) {
    n.feature = read_value<int>(in, "feature");
    n.threshold = read_double(in);
    n.left = read_value<std::size_t>(in, "left");
    n.right = read_value<std::size_t>(in, "right");
    for (auto& p : n.proba) p = read_double(in);
    if (n.feature >= static_cast<int>(tree.feature_names_.size()) ||
        (n.feature >= 0 && (n.left >= count || n.right >= count))) {
      throw Error("model stream: corrupt tree node");
    }
  }
  expect_token(in, "gain");
  tree.gain_.resize(tree.feature_names_.size());
  for (auto& g : tree.gain_) g = read_double(in);
  return tree;
}

void DecisionTree::save(std::ostream& out) const {
  detail::write_header(out, kind(), feature_names_);
  write_body(out);
}

// ---- regression tree ------------------------------------------------------

namespace {

struct RegressionBuilder {
  const Dataset& data;
  std::span<const double> grad;
  std::span<const double> hess;
  const RegressionTree::Params& params;
  std::vector<RegressionTree::Node>& nodes;
  std::vector<double>& gain;

  double score(double g, double h) const { return g * g / (h + params.lambda); }

  std::size_t build(std::vector<std::size_t>& idx, std::size_t depth) {
    double g = 0.0, h = 0.0;
    for (auto i : idx) {
      g += grad[i];
      h += hess[i];
    }
    const std::size_t id = nodes.size();
    nodes.emplace_back();
    nodes[id].value = -g / (h + params.lambda);
    if (depth >= params.max_depth || idx.size() < 2) return id;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_gain = params.min_split_gain;
    const double parent = score(g, h);
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < data.feature_count(); ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = data.rows[a][f], vb = data.rows[b][f];
        return va < vb || (va == vb && a < b);
      });
      double gl = 0.0, hl = 0.0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        gl += grad[order[k]];
        hl += hess[order[k]];
        const double a = data.rows[order[k]][f];
        const double b = data.rows[order[k + 1]][f];
        if (!(a < b)) continue;
        const double hr = h - hl;
        if (hl < params.min_child_weight || hr < params.min_child_weight) continue;
        const double split_gain = 0.5 * (score(gl, hl) + score(g - gl, hr) - parent);
        if (split_gain > best_gain + kMinGain) {
          best_gain = split_gain;
          best_feature = static_cast<int>(f);
          best_threshold = midpoint(a, b);
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto i : idx) (data.rows[i][best_feature] <= best_threshold ? left : right).push_back(i);
    gain[best_feature] += best_gain;
    nodes[id].feature = best_feature;
    nodes[id].threshold = best_threshold;
    const std::size_t l = build(left, depth + 1);
    const std::size_t r = build(right, depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

}  // namespace

RegressionTree RegressionTree::fit(const Dataset& data, std::span<const std::size_t> sample,
                                   std::span<const double> grad, std::span<const double> hess,
                                   const Params& params) {
  RegressionTree tree;
  tree.gain_.assign(data.feature_count(), 0.0);
  std::vector<std::size_t> idx(sample.begin(), sample.end());
  RegressionBuilder{data, grad, hess, params, tree.nodes_, tree.gain_}.build(idx, 0);
  return tree;
}

double RegressionTree::predict(std::span<const double> row) const {
  std::size_t id = 0;
  while (nodes_[id].feature >= 0) {
    const auto& node = nodes_[id];
    id = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].value;
}

void RegressionTree::write(std::ostream& out) const {
  out << "rtree " << nodes_.size() << '\n';
  for (const auto& n : nodes_) {
    out << n.feature << ' ' << format_exact(n.threshold) << ' ' << n.left << ' ' << n.right << ' '
        << format_exact(n.value) << '\n';
  }
  out << "gain";
  for (double g : gain_) out << ' ' << format_exact(g);
  out << '\n';
}

RegressionTree RegressionTree::read(std::istream& in, std::size_t features) {
  RegressionTree tree;
  expect_token(in, "rtree");
  const auto count = read_value<std::size_t>(in, "node count");
  tree.nodes_.resize(count);
  for (auto& n : tree.nodes_) {
    n.feature = read_value<int>(in, "feature");
    n.threshold = read_double(in);
    n.left = read_value<std::size_t>(in, "left");
    n.right = read_value<std::size_t>(in, "right");
    n.value = read_double(in);
    if (n.feature >= static_cast<int>(features) ||
        (n.feature >= 0 && (n.left >= count || n.right >= count))) {
      throw Error("model stream: corrupt regression tree node");
    }
  }
  if (count == 0) throw Error("model stream: empty regression tree");
  expect_token(in, "gain");
  tree.gain_.resize(features);
  for (auto& g : tree.gain_) g = read_double(in);
  return tree;
}

}  // namespace peerscope
