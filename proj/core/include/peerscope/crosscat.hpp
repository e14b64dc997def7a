#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"
#include "peerscope/graph.hpp"
#include "peerscope/text.hpp"

namespace peerscope {

/// Edge counts between categories. For undirected graphs only the upper
/// triangle (row <= col) is populated.
struct ClassEdgeMatrix {
  bool directed = false;
  std::array<std::array<std::size_t, kCategoryCount>, kCategoryCount> counts{};
  std::size_t total = 0;

  /// Directed: edges row -> col. Undirected: edges between the two classes
  /// in either order.
  std::size_t count(Category from, Category to) const;
  double fraction(Category from, Category to) const;
};

/// Throws Error for unlabeled nodes and UndefinedValueError for a graph
/// without edges.
ClassEdgeMatrix class_edge_matrix(const AuthorGraph& g);

struct CitationUplift {
  std::optional<double> mean_cited;    // target papers cited by a source author
  std::optional<double> mean_uncited;  // the remaining target papers
  std::size_t cited_papers = 0;
  std::size_t uncited_papers = 0;
};

/// Splits papers with at least one `target` author by whether a paper with a
/// `source` author cites them, and averages citation_count per side.
CitationUplift citation_uplift(const Corpus& corpus, const Labels& labels, Category source,
                               Category target);

struct MixSpec {
  Category focus = Category::Low;     // authors whose outcomes are compared
  Category partner = Category::High;  // the category they collaborate with
  double focus_share = 0.2;           // share of focus authors on a qualifying paper
  /// Accepted distance, in authors, between the nearest integer split and the
  /// exact share. 0 demands an exact split.
  double tolerance = 1.0;
};

struct MixedTeamColumn {
  std::size_t authors = 0;
  std::optional<double> mean_papers;
  std::optional<double> team_size;
  std::optional<double> citation;
  std::optional<double> review_sentiment;
};

struct MixedTeamReport {
  MixSpec spec;
  std::size_t qualifying_papers = 0;
  bool empty() const noexcept { return qualifying_papers == 0; }
  MixedTeamColumn collaborated;      // focus authors on their qualifying papers
  MixedTeamColumn not_collaborated;  // the same authors on papers without partner authors
};

/// True when every author is labeled focus or partner and the focus count
/// equals the nearest feasible split of the team within the tolerance.
bool matches_mix(const PaperRecord& paper, const Labels& labels, const MixSpec& spec);

/// Throws Error when focus_share is outside (0, 1) or tolerance is negative.
MixedTeamReport mixed_team_report(const Corpus& corpus, const Labels& labels, const MixSpec& spec,
                                  const TextResources& resources = {});

enum class PairFilter { all, never_collaborated, cross_category };
std::string_view to_string(PairFilter f) noexcept;

struct OverlapReport {
  Role role = Role::reviewer;
  PairFilter filter = PairFilter::all;
  Category category = Category::High;  // first category of the pair
  Category other = Category::High;     // == category unless cross_category
  std::size_t authors = 0;
  std::size_t pairs = 0;
  double mean_j = 0.0;
  double pct_j_06_1 = 0.0;  // % of pairs with J in [0.6, 1]
  double pct_j_eq_1 = 0.0;  // % of pairs with J == 1

  std::string category_label() const;
};

/// |A n B| / |A u B|; 0 for two empty sets.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Pairwise Jaccard overlap of role-id sets (deduplicated, over all of an
/// author's papers) among authors of `category`, or between `category` and
/// `other` for the cross-category filter. Authors without role data are out
/// of scope. Throws Error when fewer than two authors qualify (one per side
/// for cross-category).
OverlapReport assignment_overlap(const Corpus& corpus, const Labels& labels, Role role,
                                 PairFilter filter, Category category,
                                 std::optional<Category> other = std::nullopt,
                                 unsigned threads = 1);

}  // namespace peerscope
