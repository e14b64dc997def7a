#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corpus_builder.hpp"
#include "peerscope/cli.hpp"
#include "peerscope/digest.hpp"
#include "peerscope/error.hpp"
#include "peerscope/pipeline.hpp"
#include "peerscope/report.hpp"

using namespace peerscope;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

const fs::path kFixture = fs::path(PEERSCOPE_FIXTURE_DIR) / "fixture30.jsonl";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "peerscope");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_THROW(sha256_file("/nonexistent/file"), Error);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"ingest", "--input", kFixture.string(), "--bogus"}).code, 2);
  auto r = run({"metrics", "--input", kFixture.string(), "--graph", "crn", "--kind", "pagerank",
                "--damping", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("damping"), std::string::npos);
  EXPECT_EQ(run({"metrics", "--input", kFixture.string(), "--graph", "xyz"}).code, 2);
  EXPECT_EQ(run({"ingest"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EmptyCorpusExitsOne) {
  TempDir dir("cli-empty");
  std::ofstream(dir / "empty.jsonl").close();
  auto r = run({"categorize", "-i", (dir / "empty.jsonl").string(), "-o", (dir / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("empty"), std::string::npos);
}

TEST(Cli, MalformedCorpusNamesTheLine) {
  TempDir dir("cli-bad");
  std::ofstream(dir / "bad.jsonl") << "{\"paper_id\": 3}\n";
  auto r = run({"ingest", "-i", (dir / "bad.jsonl").string(), "-o", (dir / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.jsonl"), std::string::npos);
  EXPECT_NE(r.err.find("paper_id"), std::string::npos);
}

TEST(Cli, ReportWithoutStagesNamesTheStage) {
  TempDir dir("cli-report");
  auto r = run({"report", "-o", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'categorize' stage"), std::string::npos);
  EXPECT_THROW(write_report(dir.path()), Error);
}

TEST(Cli, ReportNamesFirstMissingStage) {
  TempDir dir("cli-report-partial");
  const std::string out = dir.path().string();
  ASSERT_EQ(run({"ingest", "-i", kFixture.string(), "-o", out}).code, 0);
  ASSERT_EQ(run({"categorize", "-i", kFixture.string(), "-o", out}).code, 0);
  auto r = run({"report", "-o", out});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'features' stage"), std::string::npos);
}

TEST(Cli, SynthWritesCorpusIntentsAndConfig) {
  TempDir dir("cli-synth");
  auto r = run({"synth", "--set", "authors_high=3", "--set", "authors_mid=3", "--set", "authors_low=3",
                "--seed", "5", "-o", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "corpus.jsonl"));
  EXPECT_EQ(first_line(dir / "intents.csv"), "author_id,intent");
  auto cfg = slurp(dir / "synth_config.txt");
  EXPECT_NE(cfg.find("seed = 5"), std::string::npos);

  auto again = run({"synth", "-c", (dir / "synth_config.txt").string(), "-o", (dir / "again").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(slurp(dir / "again" / "corpus.jsonl"), slurp(dir / "corpus.jsonl"));

  auto csv = run({"synth", "-c", (dir / "synth_config.txt").string(), "-f", "csv", "-o",
                  (dir / "csv").string()});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_TRUE(fs::exists(dir / "csv" / "corpus" / "papers.csv"));
  EXPECT_EQ(run({"synth", "--set", "nonsense=1", "-o", (dir / "x").string()}).code, 1);
}

TEST(Pipeline, AllStagesProduceDocumentedTables) {
  TempDir dir("pipeline-all");
  const std::string out = dir.path().string();
  auto r = run({"all", "-i", kFixture.string(), "-o", out, "--seed", "7", "--trees", "20",
                "--rounds", "20"});
  ASSERT_EQ(r.code, 0) << r.err;

  EXPECT_EQ(first_line(dir / "categories.csv"), "author_id,category,active_years,mean_rate");
  EXPECT_EQ(first_line(dir / "category_stats.csv"),
            "category,authors,papers,accepted,rejected,pct_accepted,pct_rejected");
  EXPECT_EQ(first_line(dir / "overlap_report.csv"), "category,role,filter,mean_J,pct_J_06_1,pct_J_eq_1");
  EXPECT_EQ(first_line(dir / "importances.csv"), "feature,score");
  EXPECT_EQ(first_line(dir / "graph_stats.csv"), "graph,scope,nodes,edges,density,assortativity,reciprocity");
  for (const char* table : {"table1_categories.csv", "fig2_paper_decisions.csv", "fig4_author_profile.csv",
                            "fig5_review_features.csv", "fig6_7_centrality.csv", "table2_core_periphery.csv",
                            "table3_4_mixed_team.csv", "table5_8_classifier.csv",
                            "table9_jaccard_overlap.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "report" / table)) << table;
  }
  EXPECT_TRUE(fs::exists(dir / "graphs" / "ccn_edges.csv"));
  EXPECT_TRUE(fs::exists(dir / "models" / "random_forest.model"));

  auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["tool"], "peerscope");
  EXPECT_EQ(manifest["input"]["sha256"], sha256_file(kFixture));
  EXPECT_EQ(manifest["config"]["seed"], 7);
  EXPECT_EQ(manifest["stages"].size(), 8u);
  for (const auto& [stage, files] : manifest["stages"].items()) {
    for (const auto& [file, digest] : files.items()) {
      EXPECT_EQ(digest, sha256_file(dir / file)) << stage << "/" << file;
    }
  }

  auto eval = nlohmann::json::parse(slurp(dir / "eval_report.json"));
  EXPECT_TRUE(eval.contains("random_forest"));
  EXPECT_TRUE(eval.contains("gbt"));
  EXPECT_EQ(eval["protocol"]["label"], "full-career category");
}

TEST(Pipeline, RerunsAreByteIdenticalAcrossThreadCounts) {
  TempDir dir("pipeline-rerun");
  const auto a = (dir / "a").string(), b = (dir / "b").string();
  ASSERT_EQ(run({"all", "-i", kFixture.string(), "-o", a, "--trees", "15", "--rounds", "15"}).code, 0);
  ASSERT_EQ(run({"all", "-i", kFixture.string(), "-o", b, "--trees", "15", "--rounds", "15",
                 "--threads", "3"})
                .code,
            0);
  auto ma = nlohmann::json::parse(slurp(fs::path(a) / "manifest.json"));
  auto mb = nlohmann::json::parse(slurp(fs::path(b) / "manifest.json"));
  EXPECT_EQ(ma["stages"], mb["stages"]);
}

TEST(Pipeline, SingleMetricSelection) {
  TempDir dir("pipeline-metric");
  const std::string out = dir.path().string();
  auto r = run({"metrics", "-i", kFixture.string(), "-o", out, "--graph", "con", "--kind", "pagerank"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "metrics_con.csv"));
  EXPECT_FALSE(fs::exists(dir / "metrics_crn.csv"));
  auto table = slurp(dir / "metrics_con.csv");
  EXPECT_EQ(table.rfind("node,kind,score\n", 0), 0u);
  EXPECT_NE(table.find(",pagerank,"), std::string::npos);
  EXPECT_EQ(table.find(",betweenness,"), std::string::npos);
}

TEST(Pipeline, CsvBundleInput) {
  TempDir dir("pipeline-csv");
  write_csv_bundle(load_corpus(kFixture, CorpusFormat::jsonl), dir / "bundle");
  auto r = run({"ingest", "-i", (dir / "bundle").string(), "-f", "csv", "-o", (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["input"]["format"], "csv");
}

TEST(Pipeline, EnvironmentSuppliesDefaultOutput) {
  TempDir dir("pipeline-env");
  ::setenv("PEERSCOPE_OUT", dir.path().c_str(), 1);
  auto r = run({"ingest", "-i", kFixture.string()});
  ::unsetenv("PEERSCOPE_OUT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "corpus_summary.csv"));
}
