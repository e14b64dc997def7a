#include "peerscope/graph.hpp"

#include "peerscope/error.hpp"

namespace peerscope {

std::size_t AuthorGraph::add_node(std::string id, std::optional<Category> label) {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  const std::size_t v = ids_.size();
  index_.emplace(id, v);
  ids_.push_back(std::move(id));
  labels_.push_back(label);
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

bool AuthorGraph::add_edge(std::size_t u, std::size_t v, std::size_t weight) {
  if (u >= ids_.size() || v >= ids_.size()) throw Error("add_edge: node index out of range");
  if (u == v) return false;
  auto [it, fresh] = edges_.try_emplace(key(u, v), 0);
  it->second += weight;
  if (fresh) {
    out_[u].push_back(v);
    if (directed_) {
      in_[v].push_back(u);
    } else {
      out_[v].push_back(u);
    }
  }
  return true;
}

std::optional<std::size_t> AuthorGraph::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool AuthorGraph::has_edge(std::size_t u, std::size_t v) const {
  return edges_.contains(key(u, v));
}

std::size_t AuthorGraph::weight(std::size_t u, std::size_t v) const {
  auto it = edges_.find(key(u, v));
  return it == edges_.end() ? 0 : it->second;
}

std::vector<Edge> AuthorGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [k, w] : edges_) out.push_back({k.first, k.second, w});
  return out;
}

AuthorGraph induced_subgraph(const AuthorGraph& g, Category category) {
  AuthorGraph sub(g.directed());
  std::vector<std::optional<std::size_t>> map(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (g.label(v) == category) map[v] = sub.add_node(g.id(v), category);
  }
  for (const auto& e : g.edges()) {
    if (map[e.source] && map[e.target]) sub.add_edge(*map[e.source], *map[e.target], e.weight);
  }
  return sub;
}

}  // namespace peerscope
