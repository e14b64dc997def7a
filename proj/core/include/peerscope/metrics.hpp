#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/graph.hpp"

namespace peerscope {

enum class CentralityKind { degree, betweenness, closeness, pagerank };
inline constexpr std::array<CentralityKind, 4> kAllCentralities = {
    CentralityKind::degree, CentralityKind::betweenness, CentralityKind::closeness,
    CentralityKind::pagerank};
std::string_view to_string(CentralityKind k) noexcept;
std::optional<CentralityKind> parse_centrality(std::string_view s) noexcept;

/// One score per node, indexed like the graph.
struct CentralityScores {
  CentralityKind kind = CentralityKind::degree;
  std::string normalization;
  std::vector<double> scores;
  // PageRank only.
  int iterations = 0;
  double residual = 0.0;

  /// Mean score over nodes carrying `category`; nullopt if there are none.
  std::optional<double> category_mean(const AuthorGraph& g, Category category) const;
};

/// deg(v) / (n - 1); directed graphs use in + out degree. Throws Error for n < 2.
CentralityScores degree_centrality(const AuthorGraph& g);

struct BetweennessOptions {
  unsigned threads = 1;
  /// 0 computes exact betweenness. Otherwise only this many sources are
  /// expanded and the result is scaled by n / k (an estimate, not exact).
  std::size_t sample_sources = 0;
  std::uint64_t seed = 0;
};

/// Brandes accumulation over breadth-first shortest paths, normalized by the
/// number of (unordered, for undirected graphs) node pairs excluding v.
/// Directed graphs use directed paths. Output does not depend on `threads`.
CentralityScores betweenness_centrality(const AuthorGraph& g, const BetweennessOptions& options = {});

/// Wasserman-Faust closeness: (r / (n - 1)) * (r / sum of distances), with r
/// the number of nodes reachable from v. Isolated nodes score 0.
CentralityScores closeness_centrality(const AuthorGraph& g, unsigned threads = 1);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

/// Power iteration until the L1 change drops below the tolerance. Dangling
/// mass is spread uniformly; undirected edges count in both directions.
/// Throws ConvergenceError (carrying the residual) when max_iterations is
/// exhausted and Error for a damping factor outside (0, 1).
CentralityScores pagerank(const AuthorGraph& g, const PageRankOptions& options = {});

struct ShellDecomposition {
  std::vector<std::size_t> core;  // per node
  std::size_t max_k = 0;
};

/// Core numbers by minimum-degree peeling. Throws Error on a directed graph.
ShellDecomposition kshell(const AuthorGraph& g);

/// 2m / (n(n-1)) undirected, m / (n(n-1)) directed. Throws Error for n < 2.
double density(const AuthorGraph& g);

/// Pearson correlation of endpoint degrees over edges (both orientations for
/// undirected graphs; source out-degree against target in-degree for
/// directed ones). Throws UndefinedValueError without edges or variance.
double assortativity(const AuthorGraph& g);

using NodeSet = std::vector<std::size_t>;

/// Fraction of directed edges whose reverse edge also exists. Throws Error on
/// undirected graphs and UndefinedValueError when no edge is in scope.
double reciprocity(const AuthorGraph& g);
/// Edges with both endpoints in `within`.
double reciprocity(const AuthorGraph& g, const NodeSet& within);
/// Edges running between the two sets (either direction). Identical sets
/// fall back to the within-set form; partially overlapping sets throw.
double reciprocity(const AuthorGraph& g, const NodeSet& a, const NodeSet& b);

/// Fraction of v's out-edges that are reciprocated; 0 when v has none.
double node_reciprocity(const AuthorGraph& g, std::size_t v);

/// Nodes of `category` in graph order.
NodeSet nodes_of(const AuthorGraph& g, Category category);

struct ShellRow {
  std::string shell;  // innermost / inner-mid / outer-mid / outermost
  std::size_t k = 0;
  std::size_t authors = 0;
  std::array<double, kCategoryCount> percent{};  // share of the shell's nodes
};

/// Occupancy of the innermost shell, two interior shells at the upper and
/// lower thirds of the realized shell indices, and the k = 1 shell.
std::vector<ShellRow> shell_occupancy(const AuthorGraph& g, const ShellDecomposition& shells);

}  // namespace peerscope
