#include "peerscope/netbuild.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace peerscope {
namespace {

std::optional<Category> label_of(const Labels& labels, const std::string& author) {
  auto it = labels.find(author);
  return it == labels.end() ? std::nullopt : std::optional(it->second);
}

AuthorGraph author_nodes(const Corpus& corpus, const Labels& labels, bool directed) {
  AuthorGraph g(directed);
  for (const auto& a : corpus.authors()) g.add_node(a, label_of(labels, a));
  return g;
}

std::size_t node(const AuthorGraph& g, const std::string& author) { return *g.find(author); }

}  // namespace

AuthorGraph build_crn(const Corpus& corpus, const Labels& labels, const CrnOptions& options) {
  AuthorGraph g = author_nodes(corpus, labels, false);

  // reviewer -> distinct papers reviewed (corpus indexes)
  std::map<std::string, std::set<std::size_t>> reviewed;
  const auto& papers = corpus.papers();
  for (std::size_t i = 0; i < papers.size(); ++i) {
    for (const auto& round : papers[i].review_rounds) {
      for (const auto& r : round.reviewer_ids) reviewed[r].insert(i);
    }
  }

  for (const auto& [reviewer, paper_set] : reviewed) {
    // author -> the papers of this reviewer that list the author
    std::map<std::size_t, std::vector<std::size_t>> touched;
    for (auto i : paper_set) {
      for (const auto& a : papers[i].author_ids) touched[node(g, a)].push_back(i);
    }
    std::vector<std::pair<std::size_t, const std::vector<std::size_t>*>> authors;
    for (const auto& [v, ps] : touched) authors.emplace_back(v, &ps);
    for (std::size_t x = 0; x < authors.size(); ++x) {
      for (std::size_t y = x + 1; y < authors.size(); ++y) {
        const auto& pa = *authors[x].second;
        const auto& pb = *authors[y].second;
        // Strict mode needs two distinct papers; that only fails when both
        // authors meet this reviewer through the very same single paper.
        if (options.strict && pa.size() == 1 && pb.size() == 1 && pa[0] == pb[0]) continue;
        g.add_edge(authors[x].first, authors[y].first);
      }
    }
  }
  return g;
}

AuthorGraph build_con(const Corpus& corpus, const Labels& labels) {
  AuthorGraph g = author_nodes(corpus, labels, false);
  for (const auto& p : corpus.papers()) {
    for (std::size_t x = 0; x < p.author_ids.size(); ++x) {
      for (std::size_t y = x + 1; y < p.author_ids.size(); ++y) {
        g.add_edge(node(g, p.author_ids[x]), node(g, p.author_ids[y]));
      }
    }
  }
  return g;
}

AuthorGraph build_ccn(const Corpus& corpus, const Labels& labels) {
  AuthorGraph g = author_nodes(corpus, labels, true);
  for (const auto& p : corpus.papers()) {
    for (const auto& cited_id : p.cited_paper_ids) {
      const PaperRecord* cited = corpus.find(cited_id);
      if (!cited) continue;
      for (const auto& a : p.author_ids) {
        for (const auto& b : cited->author_ids) g.add_edge(node(g, a), node(g, b));
      }
    }
  }
  return g;
}

BipartiteAssignmentGraph build_assignment_graph(const Corpus& corpus, const Labels& labels,
                                                Role role, std::optional<std::size_t> top_k) {
  // author -> role ids that handled at least one of their papers
  std::map<std::string, std::set<std::string>> handled;
  std::map<std::string, std::int64_t> citations;
  for (const auto& p : corpus.papers()) {
    for (const auto& a : p.author_ids) citations[a] += p.citation_count;
    for (const auto& r : p.review_rounds) {
      for (const auto& a : p.author_ids) {
        auto& ids = handled[a];
        if (role == Role::editor) {
          if (!r.editor_id.empty()) ids.insert(r.editor_id);
        } else {
          ids.insert(r.reviewer_ids.begin(), r.reviewer_ids.end());
        }
      }
    }
  }

  std::vector<std::string> authors;
  for (const auto& [a, ids] : handled) {
    if (!ids.empty()) authors.push_back(a);
  }
  if (top_k && *top_k < authors.size()) {
    std::stable_sort(authors.begin(), authors.end(), [&](const auto& x, const auto& y) {
      return citations[x] > citations[y];
    });
    authors.resize(*top_k);
    std::sort(authors.begin(), authors.end());
  }

  BipartiteAssignmentGraph g;
  g.role = role;
  std::set<std::string> left_ids;
  for (const auto& a : authors) left_ids.insert(handled[a].begin(), handled[a].end());
  g.left.assign(left_ids.begin(), left_ids.end());
  g.right = authors;
  for (const auto& a : authors) g.right_labels.push_back(label_of(labels, a));
  for (std::size_t j = 0; j < authors.size(); ++j) {
    for (const auto& id : handled[authors[j]]) {
      auto i = static_cast<std::size_t>(
          std::lower_bound(g.left.begin(), g.left.end(), id) - g.left.begin());
      g.edges.emplace(i, j);
    }
  }
  return g;
}

}  // namespace peerscope
