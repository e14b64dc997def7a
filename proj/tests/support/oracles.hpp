#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. Everything here works on a dense adjacency matrix and is written
// for clarity on tiny graphs, not speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "peerscope/graph.hpp"
#include "peerscope/rng.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

struct Dense {
  bool directed = false;
  std::size_t n = 0;
  Matrix adj;  // adj[u][v] == 1 when u -> v (symmetric when undirected)
};

inline Dense dense(const peerscope::AuthorGraph& g) {
  Dense d{g.directed(), g.node_count(), Matrix(g.node_count(), std::vector<int>(g.node_count(), 0))};
  for (const auto& e : g.edges()) {
    d.adj[e.source][e.target] = 1;
    if (!g.directed()) d.adj[e.target][e.source] = 1;
  }
  return d;
}

/// Erdos-Renyi style graph with 1..max_nodes nodes and edge probability p.
inline peerscope::AuthorGraph random_graph(peerscope::Rng& rng, bool directed,
                                           std::size_t max_nodes = 8) {
  peerscope::AuthorGraph g(directed);
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_nodes)));
  const double p = 0.15 + 0.7 * rng.uniform();
  for (std::size_t v = 0; v < n; ++v) {
    g.add_node("v" + std::to_string(v), static_cast<peerscope::Category>(v % 3));
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && rng.bernoulli(p)) g.add_edge(u, v);
    }
  }
  return g;
}

inline std::size_t degree(const Dense& d, std::size_t v) {
  std::size_t k = 0;
  for (std::size_t u = 0; u < d.n; ++u) {
    k += static_cast<std::size_t>(d.adj[v][u]);
    if (d.directed) k += static_cast<std::size_t>(d.adj[u][v]);
  }
  return k;
}

inline std::vector<double> degree_centrality(const Dense& d) {
  std::vector<double> out(d.n);
  for (std::size_t v = 0; v < d.n; ++v) {
    out[v] = static_cast<double>(degree(d, v)) / static_cast<double>(d.n - 1);
  }
  return out;
}

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// Floyd-Warshall hop distances.
inline Matrix distances(const Dense& d) {
  Matrix dist(d.n, std::vector<int>(d.n, kInf));
  for (std::size_t u = 0; u < d.n; ++u) {
    dist[u][u] = 0;
    for (std::size_t v = 0; v < d.n; ++v) {
      if (d.adj[u][v]) dist[u][v] = 1;
    }
  }
  for (std::size_t k = 0; k < d.n; ++k) {
    for (std::size_t i = 0; i < d.n; ++i) {
      for (std::size_t j = 0; j < d.n; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  return dist;
}

inline std::vector<double> closeness(const Dense& d) {
  const auto dist = distances(d);
  std::vector<double> out(d.n, 0.0);
  for (std::size_t v = 0; v < d.n; ++v) {
    double reached = 0, total = 0;
    for (std::size_t u = 0; u < d.n; ++u) {
      if (u != v && dist[v][u] < kInf) {
        reached += 1;
        total += dist[v][u];
      }
    }
    if (reached > 0) out[v] = (reached / static_cast<double>(d.n - 1)) * (reached / total);
  }
  return out;
}

namespace detail {

inline void walk(const Dense& d, std::size_t at, std::size_t target, std::size_t limit,
                 std::vector<std::size_t>& path, std::vector<char>& seen,
                 std::vector<std::vector<std::size_t>>& found) {
  if (at == target) {
    found.push_back(path);
    return;
  }
  if (path.size() > limit) return;
  for (std::size_t next = 0; next < d.n; ++next) {
    if (!d.adj[at][next] || seen[next]) continue;
    seen[next] = 1;
    path.push_back(next);
    walk(d, next, target, limit, path, seen, found);
    path.pop_back();
    seen[next] = 0;
  }
}

}  // namespace detail

/// Every simple path from s to t, as node sequences including both ends.
inline std::vector<std::vector<std::size_t>> simple_paths(const Dense& d, std::size_t s,
                                                          std::size_t t) {
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> path{s};
  std::vector<char> seen(d.n, 0);
  seen[s] = 1;
  detail::walk(d, s, t, d.n, path, seen, found);
  return found;
}

/// Betweenness by enumerating all shortest paths for every ordered pair,
/// normalized by (n - 1)(n - 2) ordered pairs.
inline std::vector<double> betweenness(const Dense& d) {
  std::vector<double> out(d.n, 0.0);
  if (d.n < 3) return out;
  for (std::size_t s = 0; s < d.n; ++s) {
    for (std::size_t t = 0; t < d.n; ++t) {
      if (s == t) continue;
      auto paths = simple_paths(d, s, t);
      if (paths.empty()) continue;
      std::size_t shortest = paths.front().size();
      for (const auto& p : paths) shortest = std::min(shortest, p.size());
      std::vector<double> through(d.n, 0.0);
      double count = 0;
      for (const auto& p : paths) {
        if (p.size() != shortest) continue;
        count += 1;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) through[p[i]] += 1;
      }
      for (std::size_t v = 0; v < d.n; ++v) out[v] += through[v] / count;
    }
  }
  const double pairs = static_cast<double>((d.n - 1) * (d.n - 2));
  for (auto& x : out) x /= pairs;
  return out;
}

/// Core numbers from the definition: the largest k such that v lies in an
/// induced subgraph whose minimum degree is k. Exponential in n.
inline std::vector<std::size_t> core_numbers(const Dense& d) {
  std::vector<std::size_t> core(d.n, 0);
  for (unsigned mask = 1; mask < (1u << d.n); ++mask) {
    std::size_t min_deg = d.n;
    for (std::size_t v = 0; v < d.n; ++v) {
      if (!(mask >> v & 1u)) continue;
      std::size_t k = 0;
      for (std::size_t u = 0; u < d.n; ++u) {
        if ((mask >> u & 1u) && d.adj[v][u]) ++k;
      }
      min_deg = std::min(min_deg, k);
    }
    for (std::size_t v = 0; v < d.n; ++v) {
      if (mask >> v & 1u) core[v] = std::max(core[v], min_deg);
    }
  }
  return core;
}

inline double density(const Dense& d) {
  double links = 0;
  for (std::size_t u = 0; u < d.n; ++u) {
    for (std::size_t v = 0; v < d.n; ++v) links += d.adj[u][v];
  }
  // The symmetric matrix counts every undirected edge twice, matching 2m.
  return links / (static_cast<double>(d.n) * static_cast<double>(d.n - 1));
}

/// Newman's degree assortativity. Undirected graphs use the symmetric form
/// over edges; directed graphs correlate source out-degree with target
/// in-degree. Returns NaN when undefined.
inline double assortativity(const Dense& d) {
  std::vector<double> out_deg(d.n, 0), in_deg(d.n, 0);
  for (std::size_t u = 0; u < d.n; ++u) {
    for (std::size_t v = 0; v < d.n; ++v) {
      out_deg[u] += d.adj[u][v];
      in_deg[v] += d.adj[u][v];
    }
  }
  double m = 0, sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (std::size_t u = 0; u < d.n; ++u) {
    for (std::size_t v = 0; v < d.n; ++v) {
      if (!d.adj[u][v]) continue;
      const double x = out_deg[u];
      const double y = d.directed ? in_deg[v] : out_deg[v];
      m += 1;
      sxy += x * y;
      sx += x;
      sy += y;
      sxx += x * x;
      syy += y * y;
    }
  }
  if (m == 0) return std::nan("");
  // Integer moments are exact in double at these sizes.
  const double cov = m * sxy - sx * sy;
  const double vx = m * sxx - sx * sx;
  const double vy = m * syy - sy * sy;
  if (vx == 0 || vy == 0) return std::nan("");
  return cov / std::sqrt(vx * vy);
}

/// Share of directed edges whose reverse exists; NaN without edges.
inline double reciprocity(const Dense& d) {
  double edges = 0, mutual = 0;
  for (std::size_t u = 0; u < d.n; ++u) {
    for (std::size_t v = 0; v < d.n; ++v) {
      if (!d.adj[u][v]) continue;
      edges += 1;
      if (d.adj[v][u]) mutual += 1;
    }
  }
  return edges == 0 ? std::nan("") : mutual / edges;
}

/// Natural-log Shannon entropy from counts.
inline double entropy(const std::map<std::string, std::size_t>& counts) {
  double total = 0;
  for (const auto& [_, c] : counts) total += static_cast<double>(c);
  double h = 0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace oracle
