#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "corpus_builder.hpp"
#include "peerscope/crosscat.hpp"
#include "peerscope/error.hpp"
#include "peerscope/netbuild.hpp"
#include "peerscope/rng.hpp"

using namespace peerscope;
using testing_support::make_corpus;

namespace {

bool linked(const AuthorGraph& g, const std::string& a, const std::string& b) {
  return g.has_edge(*g.find(a), *g.find(b));
}

// H1, H2 High; M1 Mid; L1, L2 Low.
const Labels kLabels{{"H1", Category::High}, {"H2", Category::High}, {"M1", Category::Mid},
                     {"L1", Category::Low},  {"L2", Category::Low}};

Corpus small_corpus() {
  return make_corpus({
      {.id = "P1", .authors = {"H1", "H2"}, .year = 2000, .citations = 10, .editor = "E1", .reviewers = {"R1"}},
      {.id = "P2", .authors = {"H1"}, .year = 2001, .citations = 5, .cites = {"P1"}, .editor = "E1", .reviewers = {"R1", "R2"}},
      {.id = "P3", .authors = {"L1"}, .year = 2001, .accepted = false, .cites = {"P1", "P2"}, .editor = "E2", .reviewers = {"R2"}},
      {.id = "P4", .authors = {"M1", "L2"}, .year = 2002, .citations = 1, .cites = {"P3"}, .editor = "E2", .reviewers = {"R3"}},
  });
}

}  // namespace

TEST(Crn, SharedReviewerLinksAuthors) {
  auto c = small_corpus();
  auto g = build_crn(c, kLabels);
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_TRUE(linked(g, "H1", "H2"));  // R1 on P1 and P2
  EXPECT_TRUE(linked(g, "H1", "L1"));  // R2 on P2 and P3
  EXPECT_TRUE(linked(g, "M1", "L2"));  // R3 on P4 only
  EXPECT_FALSE(linked(g, "H2", "L1"));
  EXPECT_EQ(g.label(*g.find("L2")), Category::Low);

  auto strict = build_crn(c, kLabels, {.strict = true});
  EXPECT_TRUE(linked(strict, "H1", "H2"));
  EXPECT_FALSE(linked(strict, "M1", "L2"));
}

TEST(Con, CoauthorsOnly) {
  auto g = build_con(small_corpus(), kLabels);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(linked(g, "H1", "H2"));
  EXPECT_TRUE(linked(g, "M1", "L2"));
}

TEST(Ccn, DirectedCitationsWithoutSelfLoops) {
  auto g = build_ccn(small_corpus(), kLabels);
  EXPECT_TRUE(g.directed());
  EXPECT_TRUE(linked(g, "L1", "H1"));
  EXPECT_TRUE(linked(g, "L1", "H2"));
  EXPECT_TRUE(linked(g, "M1", "L1"));
  EXPECT_FALSE(linked(g, "H1", "L1"));
  EXPECT_TRUE(linked(g, "H1", "H2"));  // P2 (H1) cites P1 (H1, H2); H1 -> H1 dropped
  EXPECT_EQ(g.weight(*g.find("L1"), *g.find("H1")), 2u);
}

TEST(Assignment, TopKKeepsMostCited) {
  auto c = small_corpus();
  auto all = build_assignment_graph(c, kLabels, Role::editor);
  EXPECT_EQ(all.left, (std::vector<std::string>{"E1", "E2"}));
  EXPECT_EQ(all.right.size(), 5u);
  auto top = build_assignment_graph(c, kLabels, Role::reviewer, 2);
  EXPECT_EQ(top.right, (std::vector<std::string>{"H1", "H2"}));
  EXPECT_EQ(top.left, (std::vector<std::string>{"R1", "R2"}));
  EXPECT_EQ(top.edges.size(), 3u);
  std::ostringstream edges;
  write_edges_csv(top, edges);
  EXPECT_EQ(edges.str(), "src,dst,weight,directed\nR1,H1,1,true\nR1,H2,1,true\nR2,H1,1,true\n");
}

TEST(EdgeMatrix, CountsByCategoryPair) {
  auto c = small_corpus();
  auto m = class_edge_matrix(build_ccn(c, kLabels));
  // H1->H2, L1->H1, L1->H2, M1->L1, L2->L1
  EXPECT_EQ(m.total, 5u);
  EXPECT_EQ(m.count(Category::Low, Category::High), 2u);
  EXPECT_EQ(m.count(Category::High, Category::Low), 0u);
  EXPECT_EQ(m.count(Category::Low, Category::Low), 1u);
  EXPECT_DOUBLE_EQ(m.fraction(Category::High, Category::High), 0.2);

  auto u = class_edge_matrix(build_con(c, kLabels));
  EXPECT_EQ(u.count(Category::Low, Category::Mid), 1u);
  EXPECT_EQ(u.count(Category::Mid, Category::Low), 1u);

  Labels partial{{"H1", Category::High}};
  EXPECT_THROW(class_edge_matrix(build_con(c, partial)), Error);
  AuthorGraph empty;
  empty.add_node("x", Category::High);
  EXPECT_THROW(class_edge_matrix(empty), UndefinedValueError);
}

TEST(CitationUplift, SplitsTargetPapersByCitingCategory) {
  auto up = citation_uplift(small_corpus(), kLabels, Category::Low, Category::High);
  EXPECT_EQ(up.cited_papers, 2u);
  EXPECT_EQ(up.uncited_papers, 0u);
  EXPECT_DOUBLE_EQ(*up.mean_cited, 7.5);
  EXPECT_FALSE(up.mean_uncited.has_value());
}

TEST(MixedTeam, NearestSplitWithinTolerance) {
  Labels labels;
  for (int i = 0; i < 5; ++i) {
    labels["L" + std::to_string(i)] = Category::Low;
    labels["H" + std::to_string(i)] = Category::High;
  }
  auto paper = [](std::vector<std::string> authors) {
    return testing_support::make_paper({.id = "X", .authors = std::move(authors)});
  };
  MixSpec exact{Category::Low, Category::High, 0.2, 0.0};
  EXPECT_TRUE(matches_mix(paper({"L0", "H0", "H1", "H2", "H3"}), labels, exact));
  EXPECT_FALSE(matches_mix(paper({"L0", "L1", "H1", "H2", "H3"}), labels, exact));
  EXPECT_FALSE(matches_mix(paper({"L0", "H1", "H2"}), labels, exact));  // nearest split is 0.4 authors off
  MixSpec loose{Category::Low, Category::High, 0.2, 1.0};
  EXPECT_TRUE(matches_mix(paper({"L0", "H1", "H2"}), labels, loose));
  EXPECT_FALSE(matches_mix(paper({"L0"}), labels, loose));
  EXPECT_FALSE(matches_mix(paper({"L0", "H1", "Q"}), labels, loose));

  EXPECT_THROW(mixed_team_report(small_corpus(), kLabels, {Category::Low, Category::High, 1.0, 0.0}), Error);
  EXPECT_THROW(mixed_team_report(small_corpus(), kLabels, {Category::Low, Category::Low, 0.5, 0.0}), Error);
}

TEST(MixedTeam, CollaboratedVersusAlone) {
  Labels labels{{"L", Category::Low}, {"H", Category::High}};
  auto c = make_corpus({
      {.id = "P1", .authors = {"L", "H"}, .citations = 8},
      {.id = "P2", .authors = {"L"}, .citations = 2},
      {.id = "P3", .authors = {"L"}, .citations = 0},
  });
  auto r = mixed_team_report(c, labels, {Category::Low, Category::High, 0.5, 0.0});
  EXPECT_EQ(r.qualifying_papers, 1u);
  EXPECT_EQ(r.collaborated.authors, 1u);
  EXPECT_DOUBLE_EQ(*r.collaborated.citation, 8.0);
  EXPECT_DOUBLE_EQ(*r.not_collaborated.mean_papers, 2.0);
  EXPECT_DOUBLE_EQ(*r.not_collaborated.citation, 2.0);
  EXPECT_DOUBLE_EQ(*r.not_collaborated.team_size, 1.0);

  auto none = mixed_team_report(c, labels, {Category::Low, Category::High, 0.2, 0.0});
  EXPECT_TRUE(none.empty());
}

TEST(Jaccard, MatchesSetDefinition) {
  EXPECT_DOUBLE_EQ(jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(jaccard({"a", "a"}, {"a"}), 1.0);
  EXPECT_DOUBLE_EQ(jaccard({}, {}), 0.0);
}

TEST(Overlap, PairwiseMeansAndBuckets) {
  Labels labels{{"H1", Category::High}, {"H2", Category::High}, {"H3", Category::High},
                {"L1", Category::Low}};
  auto c = make_corpus({
      {.id = "P1", .authors = {"H1"}, .editor = "E1"},
      {.id = "P2", .authors = {"H2"}, .editor = "E1"},
      {.id = "P3", .authors = {"H3"}, .editor = "E1"},
      {.id = "P4", .authors = {"H3", "H1"}, .editor = "E2"},
      {.id = "P5", .authors = {"L1"}, .editor = "E3"},
  });
  // Editor sets: H1 {E1, E2}, H2 {E1}, H3 {E1, E2}.
  // Pairs: (H1,H2) = 0.5, (H1,H3) = 1, (H2,H3) = 0.5.
  auto all = assignment_overlap(c, labels, Role::editor, PairFilter::all, Category::High);
  EXPECT_EQ(all.pairs, 3u);
  EXPECT_NEAR(all.mean_j, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(all.pct_j_eq_1, 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(all.pct_j_06_1, 100.0 / 3.0, 1e-12);

  auto apart = assignment_overlap(c, labels, Role::editor, PairFilter::never_collaborated, Category::High);
  EXPECT_EQ(apart.pairs, 2u);
  EXPECT_NEAR(apart.mean_j, 0.5, 1e-15);

  auto cross = assignment_overlap(c, labels, Role::editor, PairFilter::cross_category, Category::High,
                                  Category::Low);
  EXPECT_EQ(cross.pairs, 3u);
  EXPECT_EQ(cross.mean_j, 0.0);
  EXPECT_EQ(cross.category_label(), "High-Low");

  EXPECT_THROW(assignment_overlap(c, labels, Role::editor, PairFilter::all, Category::Low), Error);
  EXPECT_THROW(assignment_overlap(c, labels, Role::editor, PairFilter::cross_category, Category::High),
               Error);
}

TEST(Overlap, AgreesWithBruteForceAndIsThreadIndependent) {
  Rng rng(11);
  std::vector<testing_support::PaperSpec> specs;
  Labels labels;
  for (int a = 0; a < 12; ++a) labels["A" + std::to_string(a)] = Category::Mid;
  for (int i = 0; i < 60; ++i) {
    const auto a = "A" + std::to_string(rng.below(12));
    std::vector<std::string> revs{"R" + std::to_string(rng.below(6))};
    specs.push_back({.id = "P" + std::to_string(i), .authors = {a}, .reviewers = revs});
  }
  auto c = make_corpus(specs);

  std::map<std::string, std::set<std::string>> sets;
  for (const auto& p : c.papers())
    for (const auto& r : p.review_rounds)
      sets[p.author_ids[0]].insert(r.reviewer_ids.begin(), r.reviewer_ids.end());
  double sum = 0;
  std::size_t pairs = 0;
  for (auto i = sets.begin(); i != sets.end(); ++i) {
    for (auto j = std::next(i); j != sets.end(); ++j) {
      std::set<std::string> inter, uni(i->second);
      std::set_intersection(i->second.begin(), i->second.end(), j->second.begin(), j->second.end(),
                            std::inserter(inter, inter.end()));
      uni.insert(j->second.begin(), j->second.end());
      sum += static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      ++pairs;
    }
  }
  auto one = assignment_overlap(c, labels, Role::reviewer, PairFilter::all, Category::Mid, std::nullopt, 1);
  auto four = assignment_overlap(c, labels, Role::reviewer, PairFilter::all, Category::Mid, std::nullopt, 4);
  EXPECT_EQ(one.pairs, pairs);
  EXPECT_NEAR(one.mean_j, sum / static_cast<double>(pairs), 1e-12);
  EXPECT_EQ(one.mean_j, four.mean_j);
}
