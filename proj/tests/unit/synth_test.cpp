#include <gtest/gtest.h>

#include <sstream>

#include "peerscope/categorizer.hpp"
#include "peerscope/crosscat.hpp"
#include "peerscope/error.hpp"
#include "peerscope/netbuild.hpp"
#include "peerscope/synth.hpp"
#include "peerscope/text.hpp"

using namespace peerscope;

namespace {

SynthConfig small(std::uint64_t seed = 7) {
  SynthConfig c;
  c.seed = seed;
  c.authors = {6, 6, 6};
  c.years = 8;
  return c;
}

std::string jsonl(const Corpus& c) {
  std::ostringstream out;
  write_jsonl(c, out);
  return out.str();
}

}  // namespace

TEST(Synth, SameConfigGivesIdenticalBytes) {
  auto a = generate(small());
  auto b = generate(small());
  EXPECT_EQ(jsonl(a.corpus), jsonl(b.corpus));
  EXPECT_NE(jsonl(a.corpus), jsonl(generate(small(8)).corpus));
}

TEST(Synth, OutputReloadsAndValidates) {
  auto s = generate(small());
  std::istringstream in(jsonl(s.corpus));
  auto back = read_jsonl(in);
  EXPECT_EQ(back.papers(), s.corpus.papers());
  EXPECT_TRUE(back.unresolved_citations().empty());
  EXPECT_EQ(s.intents.size(), 18u);
  EXPECT_EQ(back.authors().size(), 18u);
  for (const auto& p : back.papers()) {
    EXPECT_GE(p.author_ids.size(), 2u);
    ASSERT_FALSE(p.review_rounds.empty());
    for (const auto& cited : p.cited_paper_ids) {
      EXPECT_LT(back.find(cited)->submission_year, p.submission_year + 1);
    }
  }
}

TEST(Synth, RecoversPlantedCategories) {
  auto s = generate(small(3));
  auto labels = categorize_all(s.corpus);
  std::size_t hits = 0;
  for (const auto& [author, intent] : s.intents) hits += labels.at(author) == intent;
  EXPECT_GE(hits, 16u);
}

TEST(Synth, ReviewToneFollowsIntent) {
  SynthConfig cfg = small(5);
  auto s = generate(cfg);
  std::array<double, 3> sum{};
  std::array<std::size_t, 3> n{};
  for (const auto& [author, intent] : s.intents) {
    auto f = author_review_features(s.corpus, author, TextResources{});
    sum[index_of(intent)] += f.sentiment;
    ++n[index_of(intent)];
  }
  EXPECT_GT(sum[0] / n[0], sum[1] / n[1]);
  EXPECT_GT(sum[1] / n[1], sum[2] / n[2]);
}

TEST(Synth, SingleEditorSubpoolHasZeroEntropy) {
  auto cfg = small();
  cfg.editor_subpool = {1, 40, 0};
  cfg.editor_concentration = {1.0, 1.0, 0.0};
  auto s = generate(cfg);
  auto d = category_diversity(s.corpus, s.intents, Category::High, Role::editor);
  EXPECT_EQ(d.support, 1u);
  EXPECT_EQ(d.entropy, 0.0);
}

TEST(Synth, CitationWeightsShapeCitationNetwork) {
  auto cfg = small(9);
  cfg.citation_weight = {{{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}};
  auto s = generate(cfg);
  auto m = class_edge_matrix(build_ccn(s.corpus, s.intents));

  cfg.citation_weight = {{{0, 0, 1}, {0, 0, 1}, {0, 0, 1}}};
  auto t = generate(cfg);
  auto m2 = class_edge_matrix(build_ccn(t.corpus, t.intents));
  // Co-authors dilute the effect, so compare the two settings directly.
  double into_high = 0, into_high2 = 0, into_low = 0, into_low2 = 0;
  for (auto from : kAllCategories) {
    into_high += m.fraction(from, Category::High);
    into_high2 += m2.fraction(from, Category::High);
    into_low += m.fraction(from, Category::Low);
    into_low2 += m2.fraction(from, Category::Low);
  }
  EXPECT_GT(into_high, into_high2 + 0.1);
  EXPECT_GT(into_low2, into_low + 0.1);
}

TEST(SynthConfig, RoundTripsThroughText) {
  auto cfg = small(42);
  cfg.reviewer_concentration[0] = 0.25;
  cfg.citation_weight[2][1] = 0.75;
  std::stringstream text;
  write_synth_config(cfg, text);
  auto back = parse_synth_config(text);
  std::stringstream again;
  write_synth_config(back, again);
  EXPECT_EQ(again.str(), text.str());
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.reviewer_concentration[0], 0.25);
}

TEST(SynthConfig, ParseErrors) {
  std::istringstream unknown("colour = blue\n");
  EXPECT_THROW(parse_synth_config(unknown), ValidationError);
  std::istringstream bad("accept_high = lots\n");
  EXPECT_THROW(parse_synth_config(bad), ValidationError);
  std::istringstream ok("# comment\n\nseed = 11  # trailing\nauthors_low=3\n");
  auto cfg = parse_synth_config(ok);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.authors[2], 3u);
}

TEST(SynthConfig, InfeasibleValuesAreRejected) {
  auto cfg = small();
  cfg.reviewer_pool = 0;
  EXPECT_THROW(generate(cfg), Error);
  cfg = small();
  cfg.accept_probability[1] = 1.2;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small();
  cfg.reviewers_min = 4;
  cfg.reviewers_max = 2;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small();
  cfg.authors = {0, 0, 0};
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Synth, IntentsCsv) {
  Labels intents{{"A001", Category::High}, {"A002", Category::Low}};
  std::ostringstream out;
  write_intents_csv(intents, out);
  EXPECT_EQ(out.str(), "author_id,intent\nA001,High\nA002,Low\n");
}
