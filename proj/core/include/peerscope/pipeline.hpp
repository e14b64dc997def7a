#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peerscope/categorizer.hpp"
#include "peerscope/classifier.hpp"
#include "peerscope/corpus.hpp"
#include "peerscope/crosscat.hpp"
#include "peerscope/metrics.hpp"
#include "peerscope/netbuild.hpp"

namespace peerscope {

enum class Stage { ingest, categorize, features, graphs, metrics, crosscat, predict, report };
inline constexpr Stage kAllStages[] = {Stage::ingest,  Stage::categorize, Stage::features,
                                       Stage::graphs,  Stage::metrics,    Stage::crosscat,
                                       Stage::predict, Stage::report};
std::string_view to_string(Stage s) noexcept;
std::optional<Stage> parse_stage(std::string_view s) noexcept;

struct RunConfig {
  std::filesystem::path input;
  CorpusFormat format = CorpusFormat::jsonl;
  std::filesystem::path out = "peerscope-out";
  std::uint64_t seed = 0;
  unsigned threads = 1;

  CategoryThresholds thresholds;
  CrnOptions crn;
  PageRankOptions pagerank;
  /// 0 = exact betweenness.
  std::size_t betweenness_samples = 0;
  /// Top-cited authors kept in the bipartite assignment graphs.
  std::size_t top_k = 100;

  /// metrics stage selection; empty = all.
  std::vector<std::string> graphs;
  std::vector<CentralityKind> kinds;

  SplitSpec split;
  double test_fraction = 0.3;
  ForestParams forest;
  BoostingParams gbt;
};

/// Runs stages against one output directory and keeps manifest.json up to
/// date. The corpus and labels are loaded once and shared across stages.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config);
  ~Pipeline();

  void run(Stage stage);
  /// Every stage in order, starting from a fresh manifest.
  void run_all();

  const RunConfig& config() const noexcept { return config_; }
  const Corpus& corpus();
  const Labels& labels();

 private:
  struct State;
  void record(Stage stage, const std::vector<std::filesystem::path>& outputs);

  RunConfig config_;
  std::unique_ptr<State> state_;
};

std::string_view to_string(CorpusFormat f) noexcept;
std::optional<CorpusFormat> parse_format(std::string_view s) noexcept;

/// Digest of the input: the JSONL file, or the three bundle files in order.
std::string input_digest(const std::filesystem::path& input, CorpusFormat format);

}  // namespace peerscope
