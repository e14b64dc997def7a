#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"
#include "peerscope/graph.hpp"
#include "peerscope/text.hpp"

namespace peerscope {

struct CrnOptions {
  /// Require the shared reviewer to have reviewed two different papers,
  /// so co-authorship alone does not connect two authors.
  bool strict = false;
};

/// Co-reviewer network. Every corpus author is a node; edge weight counts the
/// reviewers that induce the edge.
AuthorGraph build_crn(const Corpus& corpus, const Labels& labels, const CrnOptions& options = {});

/// Collaboration network; edge weight counts co-authored papers.
AuthorGraph build_con(const Corpus& corpus, const Labels& labels);

/// Directed citation network a -> b when a paper of a cites a paper of b.
/// Author self-citations are dropped. Edge weight counts (citing, cited)
/// paper pairs.
AuthorGraph build_ccn(const Corpus& corpus, const Labels& labels);

/// Directed bipartite graph from reviewers (or editors) to the authors whose
/// papers they handled.
struct BipartiteAssignmentGraph {
  Role role = Role::reviewer;
  std::vector<std::string> left;   // sorted role ids
  std::vector<std::string> right;  // sorted author ids
  std::vector<std::optional<Category>> right_labels;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // (left index, right index)
};

/// With `top_k`, only the k authors with the largest citation totals are
/// kept (ties broken by author id); k larger than the author count keeps
/// everyone. Authors without handled papers never appear.
BipartiteAssignmentGraph build_assignment_graph(const Corpus& corpus, const Labels& labels,
                                                Role role,
                                                std::optional<std::size_t> top_k = std::nullopt);

void write_nodes_csv(const BipartiteAssignmentGraph& g, std::ostream& out);
void write_edges_csv(const BipartiteAssignmentGraph& g, std::ostream& out);
void write_dot(const BipartiteAssignmentGraph& g, std::ostream& out);

}  // namespace peerscope
