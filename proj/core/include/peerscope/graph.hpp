#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "peerscope/category.hpp"

namespace peerscope {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t weight = 1;  // incidence count
};

/// Simple author graph (no self-loops, no parallel edges) with optional
/// category labels on nodes. Undirected edges are stored once with
/// source < target. Repeated insertions raise the edge multiplicity; the
/// metrics ignore it.
class AuthorGraph {
 public:
  explicit AuthorGraph(bool directed = false) : directed_(directed) {}

  bool directed() const noexcept { return directed_; }

  /// Returns the index of `id`, adding the node if needed.
  std::size_t add_node(std::string id, std::optional<Category> label = std::nullopt);

  /// Returns false (and stores nothing) for a self-loop.
  bool add_edge(std::size_t u, std::size_t v, std::size_t weight = 1);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& id(std::size_t v) const { return ids_.at(v); }
  std::optional<Category> label(std::size_t v) const { return labels_.at(v); }
  std::optional<std::size_t> find(std::string_view id) const;

  /// Successors; for undirected graphs, all neighbours.
  std::span<const std::size_t> out_neighbors(std::size_t v) const { return out_.at(v); }
  /// Predecessors; for undirected graphs, all neighbours.
  std::span<const std::size_t> in_neighbors(std::size_t v) const {
    return directed_ ? std::span<const std::size_t>(in_.at(v)) : out_neighbors(v);
  }

  std::size_t out_degree(std::size_t v) const { return out_.at(v).size(); }
  std::size_t in_degree(std::size_t v) const { return in_neighbors(v).size(); }
  /// Undirected: neighbour count. Directed: in + out.
  std::size_t degree(std::size_t v) const {
    return directed_ ? out_degree(v) + in_degree(v) : out_degree(v);
  }

  bool has_edge(std::size_t u, std::size_t v) const;
  std::size_t weight(std::size_t u, std::size_t v) const;

  /// Sorted by (source, target).
  std::vector<Edge> edges() const;

 private:
  std::pair<std::size_t, std::size_t> key(std::size_t u, std::size_t v) const {
    return (directed_ || u < v) ? std::pair{u, v} : std::pair{v, u};
  }

  bool directed_;
  std::vector<std::string> ids_;
  std::vector<std::optional<Category>> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges_;
};

/// Nodes of `category` and the edges among them.
AuthorGraph induced_subgraph(const AuthorGraph& g, Category category);

// ---- exchange formats -----------------------------------------------------

/// nodes.csv: id,category (empty category for unlabeled nodes)
void write_nodes_csv(const AuthorGraph& g, std::ostream& out);
/// edges.csv: src,dst,weight,directed
void write_edges_csv(const AuthorGraph& g, std::ostream& out);
/// Graphviz DOT with a `category` attribute and a fill colour per category.
void write_dot(const AuthorGraph& g, std::ostream& out, std::string_view name = "authors");

}  // namespace peerscope
