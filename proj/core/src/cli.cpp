#include "peerscope/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "peerscope/error.hpp"
#include "peerscope/pipeline.hpp"
#include "peerscope/synth.hpp"

#ifndef PEERSCOPE_VERSION
#define PEERSCOPE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace peerscope::cli {
namespace {

struct Options {
  RunConfig run;
  std::string format = "jsonl";
  std::string graph = "all";
  std::string kind = "all";
  bool no_bootstrap = false;
};

const CLI::Validator kOpenUnit(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "value '" + s + "' is not a number";
      }
      return v > 0.0 && v < 1.0 ? "" : "value " + s + " out of range: must lie in (0, 1)";
    },
    "(0,1)", "open unit interval");

const CLI::Validator kPositive(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "value '" + s + "' is not a number";
      }
      return v > 0.0 ? "" : "value " + s + " out of range: must be positive";
    },
    "POSITIVE", "positive");

void add_io(CLI::App* cmd, Options& o, bool needs_input) {
  auto* input = cmd->add_option("-i,--input", o.run.input, "corpus: .jsonl file or CSV bundle directory");
  if (needs_input) input->required();
  cmd->add_option("-f,--format", o.format, "input format")->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("-o,--out", o.run.out, "output directory")->envname("PEERSCOPE_OUT");
  cmd->add_option("--seed", o.run.seed, "master seed");
  cmd->add_option("--threads", o.run.threads, "worker threads (0 = all cores); outputs do not depend on it");
}

void add_analysis(CLI::App* cmd, Options& o) {
  auto& r = o.run;
  cmd->add_option("--high-rate", r.thresholds.high_rate, "yearly rate above which a year counts as high")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--high-share", r.thresholds.high_year_share, "share of high years for High")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--low-rate", r.thresholds.low_rate, "yearly rate below which a year counts as low")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--low-share", r.thresholds.low_year_share, "share of low years for Low")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--crn-strict", r.crn.strict, "co-reviewer edges need two distinct papers");
  cmd->add_option("--damping", r.pagerank.damping, "PageRank damping factor")->check(kOpenUnit);
  cmd->add_option("--tolerance", r.pagerank.tolerance, "PageRank L1 tolerance")->check(kPositive);
  cmd->add_option("--max-iterations", r.pagerank.max_iterations, "PageRank iteration budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--betweenness-samples", r.betweenness_samples,
                  "estimate betweenness from this many sources (0 = exact)");
  cmd->add_option("--top-k", r.top_k, "top-cited authors kept in assignment graphs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--graph", o.graph, "metrics: graph to analyse")
      ->check(CLI::IsMember({"crn", "con", "ccn", "all"}));
  cmd->add_option("--kind", o.kind, "metrics: centrality to compute")
      ->check(CLI::IsMember({"degree", "betweenness", "closeness", "pagerank", "all"}));
  cmd->add_option("--train-years", r.split.train_years, "career years used for features")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gap-years", r.split.gap_years, "years skipped before the label")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--test-fraction", r.test_fraction, "held-out author share")->check(kOpenUnit);
  cmd->add_option("--trees", r.forest.trees, "random forest size")->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", r.forest.max_depth, "random forest tree depth")->check(CLI::PositiveNumber);
  cmd->add_option("--min-leaf", r.forest.min_leaf, "random forest minimum leaf size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--features-per-split", r.forest.features_per_split,
                  "features tried per split (0 = sqrt of the feature count)");
  cmd->add_flag("--no-bootstrap", o.no_bootstrap, "train every tree on all rows");
  cmd->add_option("--rounds", r.gbt.rounds, "boosting rounds")->check(CLI::PositiveNumber);
  cmd->add_option("--learning-rate", r.gbt.learning_rate, "boosting shrinkage")->check(kPositive);
  cmd->add_option("--gbt-depth", r.gbt.max_depth, "boosting tree depth")->check(CLI::PositiveNumber);
  cmd->add_option("--subsample", r.gbt.subsample, "boosting row share per round")
      ->check(CLI::Range(0.0, 1.0));
}

RunConfig finish(Options& o) {
  RunConfig r = o.run;
  r.format = *parse_format(o.format);
  if (o.graph != "all") r.graphs = {o.graph};
  if (o.kind != "all") r.kinds = {*parse_centrality(o.kind)};
  r.forest.bootstrap = !o.no_bootstrap;
  return r;
}

int run_synth(const std::string& config_path, const std::vector<std::string>& sets,
              std::optional<std::uint64_t> seed, const std::string& format, const fs::path& out_dir,
              std::ostream& out) {
  std::ostringstream text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open " + config_path);
    text << in.rdbuf() << '\n';
  }
  for (const auto& s : sets) text << s << '\n';
  if (seed) text << "seed = " << *seed << '\n';
  std::istringstream in(text.str());
  const auto config = parse_synth_config(in, config_path.empty() ? "<flags>" : config_path);
  const auto result = generate(config);

  fs::create_directories(out_dir);
  if (format == "csv") {
    write_csv_bundle(result.corpus, out_dir / "corpus");
  } else {
    std::ofstream f(out_dir / "corpus.jsonl", std::ios::binary);
    write_jsonl(result.corpus, f);
  }
  std::ofstream intents(out_dir / "intents.csv", std::ios::binary);
  write_intents_csv(result.intents, intents);
  std::ofstream cfg(out_dir / "synth_config.txt", std::ios::binary);
  write_synth_config(config, cfg);
  out << "synth: " << result.corpus.size() << " papers, " << result.corpus.authors().size()
      << " authors -> " << out_dir.string() << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"peerscope: peer-review analytics over author acceptance categories", "peerscope"};
  app.set_version_flag("--version", PEERSCOPE_VERSION);
  app.require_subcommand(1);

  Options o;
  std::map<CLI::App*, std::optional<Stage>> stages;
  const std::pair<const char*, const char*> stage_help[] = {
      {"ingest", "validate a corpus and summarise it"},
      {"categorize", "assign High/Mid/Low acceptance categories"},
      {"features", "author profile and review-text features"},
      {"graphs", "export CRN, CON, CCN and assignment graphs"},
      {"metrics", "centralities, k-shells, density, assortativity, reciprocity"},
      {"crosscat", "category edge matrices, mixed teams, citation uplift, Jaccard overlap"},
      {"predict", "train and evaluate the category predictors"},
      {"report", "tables and charts from earlier stage outputs"},
  };
  for (const auto& [name, help] : stage_help) {
    auto* cmd = app.add_subcommand(name, help);
    const bool report = std::string(name) == "report";
    add_io(cmd, o, !report);
    if (!report) add_analysis(cmd, o);
    stages[cmd] = parse_stage(name);
  }
  auto* all = app.add_subcommand("all", "run every stage in order");
  add_io(all, o, true);
  add_analysis(all, o);
  stages[all] = std::nullopt;

  std::string synth_config, synth_format = "jsonl";
  std::vector<std::string> synth_sets;
  std::optional<std::uint64_t> synth_seed;
  fs::path synth_out = "synth-out";
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("-c,--config", synth_config, "key = value configuration file");
  synth->add_option("--set", synth_sets, "override one key, e.g. --set 'authors_high = 30'");
  synth->add_option("--seed", synth_seed, "seed override");
  synth->add_option("-f,--format", synth_format, "output format")->check(CLI::IsMember({"jsonl", "csv"}));
  synth->add_option("-o,--out", synth_out, "output directory")->envname("PEERSCOPE_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (synth->parsed()) return run_synth(synth_config, synth_sets, synth_seed, synth_format, synth_out, out);
    for (const auto& [cmd, stage] : stages) {
      if (!cmd->parsed()) continue;
      Pipeline pipeline(finish(o));
      if (stage) {
        pipeline.run(*stage);
      } else {
        pipeline.run_all();
      }
      out << cmd->get_name() << ": outputs in " << pipeline.config().out.string() << '\n';
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace peerscope::cli
