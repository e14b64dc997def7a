#include "peerscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "peerscope/error.hpp"
#include "peerscope/parallel.hpp"
#include "peerscope/rng.hpp"

namespace peerscope {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
// Sources per work item. Fixed so the floating-point summation order, and
// therefore the output bits, is independent of the thread count.
constexpr std::size_t kSourceChunk = 32;

void require_nodes(const AuthorGraph& g, std::size_t n, const char* what) {
  if (g.node_count() < n) {
    throw Error(std::string(what) + " needs at least " + std::to_string(n) + " nodes");
  }
}

/// Single-source dependency accumulation; adds delta_s(v) into `acc`.
void brandes_source(const AuthorGraph& g, std::size_t s, std::vector<double>& acc) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);

  std::queue<std::size_t> queue;
  dist[s] = 0;
  sigma[s] = 1.0;
  queue.push(s);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    order.push_back(v);
    for (std::size_t w : g.out_neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
      if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t w = *it;
    // predecessors of w on shortest paths are in-neighbours one level up
    for (std::size_t v : g.in_neighbors(w)) {
      if (dist[v] != kUnreached && dist[v] + 1 == dist[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
    }
    if (w != s) acc[w] += delta[w];
  }
}

void bfs_distances(const AuthorGraph& g, std::size_t s, std::vector<std::size_t>& dist) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  std::queue<std::size_t> queue;
  dist[s] = 0;
  queue.push(s);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t w : g.out_neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedValueError("assortativity undefined: endpoint degrees have zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

double reciprocated_share(const AuthorGraph& g, const std::vector<char>& in_a,
                          const std::vector<char>& in_b, bool between) {
  std::size_t total = 0;
  std::size_t mutual = 0;
  for (const auto& e : g.edges()) {
    const bool in_scope = between
                              ? ((in_a[e.source] && in_b[e.target]) || (in_b[e.source] && in_a[e.target]))
                              : (in_a[e.source] && in_a[e.target]);
    if (!in_scope) continue;
    ++total;
    if (g.has_edge(e.target, e.source)) ++mutual;
  }
  if (total == 0) throw UndefinedValueError("reciprocity undefined: no edges in scope");
  return static_cast<double>(mutual) / static_cast<double>(total);
}

std::vector<char> mask(const AuthorGraph& g, const NodeSet& nodes) {
  std::vector<char> m(g.node_count(), 0);
  for (auto v : nodes) m.at(v) = 1;
  return m;
}

void require_directed(const AuthorGraph& g) {
  if (!g.directed()) throw Error("reciprocity is defined for directed graphs only");
}

}  // namespace

std::string_view to_string(CentralityKind k) noexcept {
  switch (k) {
    case CentralityKind::degree: return "degree";
    case CentralityKind::betweenness: return "betweenness";
    case CentralityKind::closeness: return "closeness";
    case CentralityKind::pagerank: return "pagerank";
  }
  return "?";
}

std::optional<CentralityKind> parse_centrality(std::string_view s) noexcept {
  for (auto k : kAllCentralities) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<double> CentralityScores::category_mean(const AuthorGraph& g, Category category) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t v = 0; v < scores.size(); ++v) {
    if (g.label(v) == category) {
      sum += scores[v];
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

CentralityScores degree_centrality(const AuthorGraph& g) {
  require_nodes(g, 2, "degree centrality");
  CentralityScores out{CentralityKind::degree, "deg/(n-1)", {}};
  const double denom = static_cast<double>(g.node_count() - 1);
  out.scores.resize(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    out.scores[v] = static_cast<double>(g.degree(v)) / denom;
  }
  return out;
}

CentralityScores betweenness_centrality(const AuthorGraph& g, const BetweennessOptions& options) {
  const std::size_t n = g.node_count();
  CentralityScores out{CentralityKind::betweenness, "pairs", std::vector<double>(n, 0.0)};

  std::vector<std::size_t> sources(n);
  std::iota(sources.begin(), sources.end(), 0);
  double scale = 1.0;
  if (options.sample_sources > 0 && options.sample_sources < n) {
    Rng rng(options.seed);
    for (std::size_t i = 0; i < options.sample_sources; ++i) {
      std::swap(sources[i], sources[i + rng.below(n - i)]);
    }
    sources.resize(options.sample_sources);
    std::sort(sources.begin(), sources.end());
    scale = static_cast<double>(n) / static_cast<double>(options.sample_sources);
    out.normalization = "pairs,sampled(" + std::to_string(options.sample_sources) + ")";
  }
  if (n < 3) return out;

  const std::size_t chunks = (sources.size() + kSourceChunk - 1) / kSourceChunk;
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    const std::size_t end = std::min(sources.size(), (c + 1) * kSourceChunk);
    for (std::size_t i = c * kSourceChunk; i < end; ++i) brandes_source(g, sources[i], partial[c]);
  });

  // Ordered source pairs; for undirected graphs every pair is seen twice,
  // which the same denominator absorbs.
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (std::size_t v = 0; v < n; ++v) {
    double sum = 0.0;
    for (const auto& p : partial) sum += p[v];
    out.scores[v] = sum * scale / pairs;
  }
  return out;
}

CentralityScores closeness_centrality(const AuthorGraph& g, unsigned threads) {
  const std::size_t n = g.node_count();
  CentralityScores out{CentralityKind::closeness, "wasserman-faust", std::vector<double>(n, 0.0)};
  if (n < 2) return out;
  const std::size_t chunks = (n + kSourceChunk - 1) / kSourceChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::vector<std::size_t> dist(n);
    const std::size_t end = std::min(n, (c + 1) * kSourceChunk);
    for (std::size_t v = c * kSourceChunk; v < end; ++v) {
      bfs_distances(g, v, dist);
      std::size_t reached = 0;
      std::size_t total = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v && dist[u] != kUnreached) {
          ++reached;
          total += dist[u];
        }
      }
      if (reached == 0) continue;
      const double r = static_cast<double>(reached);
      out.scores[v] = (r / static_cast<double>(n - 1)) * (r / static_cast<double>(total));
    }
  });
  return out;
}

CentralityScores pagerank(const AuthorGraph& g, const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw Error("pagerank damping must lie in (0, 1)");
  }
  if (!(options.tolerance > 0.0) || options.max_iterations < 1) {
    throw Error("pagerank needs a positive tolerance and iteration budget");
  }
  const std::size_t n = g.node_count();
  CentralityScores out{CentralityKind::pagerank, "sum=1", {}};
  if (n == 0) return out;

  const double d = options.damping;
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, uniform);
  std::vector<double> next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (g.out_degree(u) == 0) dangling += x[u];
    }
    const double base = (1.0 - d) * uniform + d * dangling * uniform;
    for (std::size_t v = 0; v < n; ++v) {
      double inflow = 0.0;
      for (std::size_t u : g.in_neighbors(v)) inflow += x[u] / static_cast<double>(g.out_degree(u));
      next[v] = base + d * inflow;
    }
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - x[v]);
    x.swap(next);
    if (residual < options.tolerance) {
      out.scores = std::move(x);
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(options.max_iterations) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         residual);
}

ShellDecomposition kshell(const AuthorGraph& g) {
  if (g.directed()) throw Error("k-shell decomposition needs an undirected graph");
  const std::size_t n = g.node_count();
  ShellDecomposition out;
  out.core.assign(n, 0);
  if (n == 0) return out;

  // Batagelj-Zaversnik bucket peeling.
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<std::size_t> pos(n), vert(n);
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = vert[i];
    for (std::size_t u : g.out_neighbors(v)) {
      if (deg[u] > deg[v]) {
        const std::size_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const std::size_t w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  out.core = std::move(deg);
  out.max_k = *std::max_element(out.core.begin(), out.core.end());
  return out;
}

double density(const AuthorGraph& g) {
  require_nodes(g, 2, "density");
  const double n = static_cast<double>(g.node_count());
  const double m = static_cast<double>(g.edge_count());
  return (g.directed() ? m : 2.0 * m) / (n * (n - 1.0));
}

double assortativity(const AuthorGraph& g) {
  if (g.edge_count() == 0) throw UndefinedValueError("assortativity undefined: graph has no edges");
  std::vector<double> x, y;
  for (const auto& e : g.edges()) {
    if (g.directed()) {
      x.push_back(static_cast<double>(g.out_degree(e.source)));
      y.push_back(static_cast<double>(g.in_degree(e.target)));
    } else {
      const double du = static_cast<double>(g.degree(e.source));
      const double dv = static_cast<double>(g.degree(e.target));
      x.push_back(du);
      y.push_back(dv);
      x.push_back(dv);
      y.push_back(du);
    }
  }
  return pearson(x, y);
}

double reciprocity(const AuthorGraph& g) {
  require_directed(g);
  const std::vector<char> all(g.node_count(), 1);
  return reciprocated_share(g, all, all, false);
}

double reciprocity(const AuthorGraph& g, const NodeSet& within) {
  require_directed(g);
  const auto m = mask(g, within);
  return reciprocated_share(g, m, m, false);
}

double reciprocity(const AuthorGraph& g, const NodeSet& a, const NodeSet& b) {
  require_directed(g);
  const std::set<std::size_t> sa(a.begin(), a.end());
  const std::set<std::size_t> sb(b.begin(), b.end());
  if (sa == sb) return reciprocity(g, a);
  for (auto v : sa) {
    if (sb.contains(v)) throw Error("reciprocity: node sets must be disjoint or identical");
  }
  return reciprocated_share(g, mask(g, a), mask(g, b), true);
}

double node_reciprocity(const AuthorGraph& g, std::size_t v) {
  const auto succ = g.out_neighbors(v);
  if (succ.empty()) return 0.0;
  std::size_t mutual = 0;
  for (auto u : succ) {
    if (g.has_edge(u, v)) ++mutual;
  }
  return static_cast<double>(mutual) / static_cast<double>(succ.size());
}

NodeSet nodes_of(const AuthorGraph& g, Category category) {
  NodeSet out;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (g.label(v) == category) out.push_back(v);
  }
  return out;
}

std::vector<ShellRow> shell_occupancy(const AuthorGraph& g, const ShellDecomposition& shells) {
  std::set<std::size_t> realized;
  for (auto k : shells.core) {
    if (k > 0) realized.insert(k);
  }
  std::vector<std::pair<std::string, std::size_t>> picks;
  if (!realized.empty()) {
    const std::vector<std::size_t> ks(realized.begin(), realized.end());
    std::vector<std::size_t> interior;
    for (auto k : ks) {
      if (k > 1 && k < shells.max_k) interior.push_back(k);
    }
    picks.emplace_back("innermost", shells.max_k);
    if (!interior.empty()) {
      const double last = static_cast<double>(interior.size() - 1);
      const std::size_t hi = interior[static_cast<std::size_t>(std::lround(last * 2.0 / 3.0))];
      const std::size_t lo = interior[static_cast<std::size_t>(std::lround(last / 3.0))];
      picks.emplace_back("inner-mid", hi);
      if (lo != hi) picks.emplace_back("outer-mid", lo);
    }
    if (realized.contains(1) && shells.max_k != 1) picks.emplace_back("outermost", 1);
  }

  std::vector<ShellRow> rows;
  for (const auto& [name, k] : picks) {
    ShellRow row{name, k, 0, {}};
    std::array<std::size_t, kCategoryCount> counts{};
    for (std::size_t v = 0; v < shells.core.size(); ++v) {
      if (shells.core[v] != k) continue;
      ++row.authors;
      if (auto c = g.label(v)) ++counts[index_of(*c)];
    }
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      row.percent[c] = row.authors ? 100.0 * static_cast<double>(counts[c]) / static_cast<double>(row.authors) : 0.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace peerscope
