#include "peerscope/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json_util.hpp"
#include "peerscope/csv.hpp"
#include "peerscope/digest.hpp"
#include "peerscope/error.hpp"
#include "peerscope/format.hpp"
#include "peerscope/graph.hpp"
#include "peerscope/profile.hpp"
#include "peerscope/report.hpp"
#include "peerscope/text.hpp"

#ifndef PEERSCOPE_VERSION
#define PEERSCOPE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace peerscope {
namespace {

using detail::Json;
using Row = std::vector<std::string>;

std::string num(double v) { return format_fixed(v); }
std::string num(std::optional<double> v) { return v ? format_fixed(*v) : std::string(); }
std::string cat(Category c) { return std::string(to_string(c)); }

/// Runs `body` and hands back the value, or nullopt for an undefined metric.
template <typename F>
std::optional<double> defined(F&& body) {
  try {
    return body();
  } catch (const UndefinedValueError&) {
    return std::nullopt;
  }
}

class Outputs {
 public:
  explicit Outputs(fs::path root) : root_(std::move(root)) {}

  void write(const fs::path& rel, const std::function<void(std::ostream&)>& body) {
    const fs::path path = root_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    body(out);
    if (!out) throw Error("write failed: " + path.string());
    files_.push_back(rel);
  }

  void table(const fs::path& rel, const Row& header, const std::vector<Row>& rows) {
    write(rel, [&](std::ostream& out) {
      csv::write_row(out, header);
      for (const auto& r : rows) csv::write_row(out, r);
    });
  }

  /// Registers a file written by someone else.
  void adopt(const fs::path& rel) { files_.push_back(rel); }

  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<fs::path> files_;
};

const char* kNetworks[] = {"crn", "con", "ccn"};

}  // namespace

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::categorize: return "categorize";
    case Stage::features: return "features";
    case Stage::graphs: return "graphs";
    case Stage::metrics: return "metrics";
    case Stage::crosscat: return "crosscat";
    case Stage::predict: return "predict";
    case Stage::report: return "report";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view s) noexcept {
  for (auto stage : kAllStages) {
    if (to_string(stage) == s) return stage;
  }
  return std::nullopt;
}

std::string_view to_string(CorpusFormat f) noexcept {
  return f == CorpusFormat::jsonl ? "jsonl" : "csv";
}

std::optional<CorpusFormat> parse_format(std::string_view s) noexcept {
  if (s == "jsonl") return CorpusFormat::jsonl;
  if (s == "csv") return CorpusFormat::csv_bundle;
  return std::nullopt;
}

std::string input_digest(const fs::path& input, CorpusFormat format) {
  if (format == CorpusFormat::jsonl) return sha256_file(input);
  std::string joined;
  for (const char* name : {"papers.csv", "reviews.csv", "citations.csv"}) {
    joined += name;
    joined += ' ';
    joined += sha256_file(input / name);
    joined += '\n';
  }
  return sha256_hex(joined);
}

struct Pipeline::State {
  std::optional<Corpus> corpus;
  LoadReport load;
  std::optional<Labels> labels;
  std::map<std::string, AuthorGraph> graphs;

  const AuthorGraph& graph(const std::string& name, const Corpus& c, const Labels& l,
                           const RunConfig& config) {
    auto it = graphs.find(name);
    if (it != graphs.end()) return it->second;
    AuthorGraph g = name == "crn"   ? build_crn(c, l, config.crn)
                    : name == "con" ? build_con(c, l)
                                    : build_ccn(c, l);
    return graphs.emplace(name, std::move(g)).first->second;
  }
};

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)), state_(std::make_unique<State>()) {
  config_.thresholds.validate();
  if (!(config_.pagerank.damping > 0.0 && config_.pagerank.damping < 1.0)) {
    throw Error("damping must lie in (0, 1)");
  }
  for (const auto& g : config_.graphs) {
    if (g != "crn" && g != "con" && g != "ccn") throw Error("unknown graph '" + g + "'");
  }
}

Pipeline::~Pipeline() = default;

const Corpus& Pipeline::corpus() {
  if (!state_->corpus) state_->corpus = load_corpus(config_.input, config_.format, &state_->load);
  return *state_->corpus;
}

const Labels& Pipeline::labels() {
  if (!state_->labels) state_->labels = categorize_all(corpus(), config_.thresholds);
  return *state_->labels;
}

void Pipeline::run_all() {
  fs::remove(config_.out / "manifest.json");
  for (auto stage : kAllStages) run(stage);
}

void Pipeline::run(Stage stage) {
  Outputs out(config_.out);
  const auto& config = config_;

  switch (stage) {
    case Stage::ingest: {
      const auto& c = corpus();
      std::size_t accepted = 0, rounds = 0, reviews = 0;
      for (const auto& p : c.papers()) {
        accepted += p.accepted();
        rounds += p.review_rounds.size();
        for (const auto& r : p.review_rounds) reviews += r.review_texts.size();
      }
      out.table("corpus_summary.csv", {"metric", "value"},
                {{"papers", std::to_string(c.size())},
                 {"authors", std::to_string(c.authors().size())},
                 {"accepted", std::to_string(accepted)},
                 {"rejected", std::to_string(c.size() - accepted)},
                 {"review_rounds", std::to_string(rounds)},
                 {"reviews", std::to_string(reviews)},
                 {"first_year", std::to_string(c.first_year())},
                 {"last_year", std::to_string(c.last_year())},
                 {"flagged_citations", std::to_string(c.unresolved_citations().size())}});
      std::vector<Row> rows;
      for (const auto& u : c.unresolved_citations()) rows.push_back({u.citing_paper_id, u.cited_paper_id});
      out.table("unresolved_citations.csv", {"citing_paper_id", "cited_paper_id"}, rows);
      break;
    }

    case Stage::categorize: {
      const auto& c = corpus();
      const auto& l = labels();
      std::vector<Row> rows;
      for (const auto& [author, category] : l) {
        const auto series = acceptance_series(c, author);
        double sum = 0.0;
        for (const auto& [year, rate] : series.per_year) sum += rate;
        rows.push_back({author, cat(category), std::to_string(series.per_year.size()),
                        num(sum / static_cast<double>(series.per_year.size()))});
      }
      out.table("categories.csv", {"author_id", "category", "active_years", "mean_rate"}, rows);

      const auto counts = category_counts(l);
      rows.clear();
      for (auto k : kAllCategories) {
        std::size_t papers = 0, accepted = 0;
        for (const auto& p : c.papers()) {
          const bool member = std::any_of(p.author_ids.begin(), p.author_ids.end(), [&](const auto& a) {
            auto it = l.find(a);
            return it != l.end() && it->second == k;
          });
          if (!member) continue;
          ++papers;
          accepted += p.accepted();
        }
        const double n = static_cast<double>(papers);
        rows.push_back({cat(k), std::to_string(counts[index_of(k)]), std::to_string(papers),
                        std::to_string(accepted), std::to_string(papers - accepted),
                        papers ? num(100.0 * static_cast<double>(accepted) / n) : "",
                        papers ? num(100.0 * static_cast<double>(papers - accepted) / n) : ""});
      }
      out.table("category_stats.csv",
                {"category", "authors", "papers", "accepted", "rejected", "pct_accepted", "pct_rejected"},
                rows);
      break;
    }

    case Stage::features: {
      const auto& c = corpus();
      const auto& l = labels();
      const TextResources text;
      std::vector<Row> profile_rows, review_rows;
      for (const auto& author : c.authors()) {
        const auto f = author_profile(c, author);
        profile_rows.push_back({author, std::to_string(f.citation_total), std::to_string(f.experience),
                                num(f.topic_ratio), std::to_string(f.h_index), num(f.team_size)});
        std::optional<ReviewFeatures> r;
        try {
          r = author_review_features(c, author, text);
        } catch (const Error&) {
        }
        const auto rdiv = author_diversity(c, author, Role::reviewer);
        const auto ediv = author_diversity(c, author, Role::editor);
        Row row = {author, r ? num(r->sentiment) : "", r ? num(r->length) : "",
                   rdiv ? num(rdiv->entropy) : "", ediv ? num(ediv->entropy) : ""};
        for (std::size_t e = 0; e < kEmotionCount; ++e) row.push_back(r ? num(r->lqi[e]) : "");
        review_rows.push_back(std::move(row));
      }
      out.table("profile_features.csv",
                {"author_id", "citation_total", "experience", "topic_ratio", "h_index", "team_size"},
                profile_rows);
      Row review_header = {"author_id", "review_sentiment", "review_length", "reviewer_diversity",
                           "editor_diversity"};
      for (auto e : kAllEmotions) review_header.push_back("lqi_" + std::string(to_string(e)));
      out.table("review_features.csv", review_header, review_rows);

      std::vector<Row> psum, rsum;
      for (auto k : kAllCategories) {
        try {
          const auto s = category_summary(c, l, k);
          psum.push_back({cat(k), std::to_string(s.members), num(s.citation_index),
                          num(s.mean_experience), num(s.mean_h_index), num(s.mean_team_size),
                          num(s.topic_diversity)});
        } catch (const Error&) {
          psum.push_back({cat(k), "0", "", "", "", "", ""});
        }
        double snt = 0.0, len = 0.0;
        std::size_t members = 0, with_text = 0;
        for (const auto& [author, label] : l) {
          if (label != k) continue;
          ++members;
          try {
            const auto r = author_review_features(c, author, text);
            snt += r.sentiment;
            len += r.length;
            ++with_text;
          } catch (const Error&) {
          }
        }
        auto div = [&](Role role) -> std::string {
          try {
            return num(category_diversity(c, l, k, role).entropy);
          } catch (const Error&) {
            return "";
          }
        };
        const double n = static_cast<double>(with_text);
        rsum.push_back({cat(k), std::to_string(members), with_text ? num(snt / n) : "",
                        with_text ? num(len / n) : "", div(Role::reviewer), div(Role::editor)});
      }
      out.table("profile_summary.csv",
                {"category", "members", "citation_index", "mean_experience", "mean_h_index",
                 "mean_team_size", "topic_diversity"},
                psum);
      out.table("review_summary.csv",
                {"category", "members", "mean_sentiment", "mean_length", "reviewer_diversity",
                 "editor_diversity"},
                rsum);
      break;
    }

    case Stage::graphs: {
      const auto& c = corpus();
      const auto& l = labels();
      for (std::string name : kNetworks) {
        const auto& g = state_->graph(name, c, l, config);
        out.write("graphs/" + name + "_nodes.csv", [&](std::ostream& o) { write_nodes_csv(g, o); });
        out.write("graphs/" + name + "_edges.csv", [&](std::ostream& o) { write_edges_csv(g, o); });
        out.write("graphs/" + name + ".dot", [&](std::ostream& o) { write_dot(g, o, name); });
      }
      for (auto role : {Role::reviewer, Role::editor}) {
        const auto b = build_assignment_graph(c, l, role, config.top_k);
        const std::string base = "graphs/" + std::string(to_string(role)) + "_assignment";
        out.write(base + "_nodes.csv", [&](std::ostream& o) { write_nodes_csv(b, o); });
        out.write(base + "_edges.csv", [&](std::ostream& o) { write_edges_csv(b, o); });
        out.write(base + ".dot", [&](std::ostream& o) { write_dot(b, o); });
      }
      break;
    }

    case Stage::metrics: {
      const auto& c = corpus();
      const auto& l = labels();
      std::vector<std::string> selected = config.graphs;
      if (selected.empty()) selected.assign(std::begin(kNetworks), std::end(kNetworks));
      std::vector<CentralityKind> kinds = config.kinds;
      if (kinds.empty()) kinds.assign(kAllCentralities.begin(), kAllCentralities.end());
      std::sort(kinds.begin(), kinds.end());
      kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

      std::vector<Row> means, stats;
      for (const char* name : kNetworks) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
        const auto& g = state_->graph(name, c, l, config);
        std::vector<Row> rows;
        for (auto kind : kinds) {
          CentralityScores s;
          switch (kind) {
            case CentralityKind::degree: s = degree_centrality(g); break;
            case CentralityKind::betweenness:
              s = betweenness_centrality(g, {config.threads, config.betweenness_samples, config.seed});
              break;
            case CentralityKind::closeness: s = closeness_centrality(g, config.threads); break;
            case CentralityKind::pagerank: s = pagerank(g, config.pagerank); break;
          }
          for (std::size_t v = 0; v < g.node_count(); ++v) {
            rows.push_back({g.id(v), std::string(to_string(kind)), format_fixed(s.scores[v], 12)});
          }
          Row m = {name, std::string(to_string(kind))};
          for (auto k : kAllCategories) m.push_back(format_fixed(s.category_mean(g, k).value_or(0.0), 12));
          means.push_back(std::move(m));
        }
        out.table(std::string("metrics_") + name + ".csv", {"node", "kind", "score"}, rows);

        if (!g.directed()) {
          const auto shells = kshell(g);
          rows.clear();
          for (std::size_t v = 0; v < g.node_count(); ++v) {
            rows.push_back({g.id(v), std::to_string(shells.core[v])});
          }
          out.table(std::string("kshell_") + name + ".csv", {"node", "core"}, rows);
          if (std::string(name) == "crn") {
            rows.clear();
            for (const auto& r : shell_occupancy(g, shells)) {
              Row row = {r.shell, std::to_string(r.k), std::to_string(r.authors)};
              for (double p : r.percent) row.push_back(num(p));
              rows.push_back(std::move(row));
            }
            out.table("shell_occupancy.csv", {"shell", "k", "authors", "pct_High", "pct_Mid", "pct_Low"},
                      rows);
          }
        }

        auto stat_row = [&](const std::string& scope, const AuthorGraph& sub) {
          stats.push_back({name, scope, std::to_string(sub.node_count()), std::to_string(sub.edge_count()),
                           sub.node_count() >= 2 ? num(density(sub)) : "",
                           num(defined([&] { return assortativity(sub); })),
                           sub.directed() ? num(defined([&] { return reciprocity(sub); })) : ""});
        };
        stat_row("all", g);
        for (auto k : kAllCategories) stat_row(cat(k), induced_subgraph(g, k));

        if (g.directed()) {
          rows.clear();
          for (auto a : kAllCategories) {
            rows.push_back({cat(a), num(defined([&] { return reciprocity(g, nodes_of(g, a)); }))});
          }
          for (auto a : kAllCategories) {
            for (auto b : kAllCategories) {
              if (index_of(a) >= index_of(b)) continue;
              rows.push_back({cat(a) + "-" + cat(b),
                              num(defined([&] { return reciprocity(g, nodes_of(g, a), nodes_of(g, b)); }))});
            }
          }
          out.table(std::string("reciprocity_") + name + ".csv", {"scope", "reciprocity"}, rows);
        }
      }
      out.table("centrality_means.csv", {"graph", "kind", "High", "Mid", "Low"}, means);
      out.table("graph_stats.csv",
                {"graph", "scope", "nodes", "edges", "density", "assortativity", "reciprocity"}, stats);
      break;
    }

    case Stage::crosscat: {
      const auto& c = corpus();
      const auto& l = labels();
      std::vector<Row> rows;
      for (std::string name : kNetworks) {
        const auto& g = state_->graph(name, c, l, config);
        if (g.edge_count() == 0) continue;
        const auto m = class_edge_matrix(g);
        for (auto a : kAllCategories) {
          for (auto b : kAllCategories) {
            if (!m.directed && index_of(a) > index_of(b)) continue;
            rows.push_back({name, cat(a), cat(b), std::to_string(m.count(a, b)), num(m.fraction(a, b))});
          }
        }
      }
      out.table("edge_matrix.csv", {"graph", "from", "to", "count", "fraction"}, rows);

      rows.clear();
      auto overlap_row = [&](Role role, PairFilter filter, Category a, std::optional<Category> b) {
        try {
          const auto r = assignment_overlap(c, l, role, filter, a, b, config.threads);
          rows.push_back({r.category_label(), std::string(to_string(role)), std::string(to_string(filter)),
                          num(r.mean_j), num(r.pct_j_06_1), num(r.pct_j_eq_1)});
        } catch (const Error&) {
          // fewer than two qualifying authors: no row
        }
      };
      for (auto role : {Role::reviewer, Role::editor}) {
        for (auto filter : {PairFilter::all, PairFilter::never_collaborated}) {
          for (auto k : kAllCategories) overlap_row(role, filter, k, std::nullopt);
        }
        for (auto a : kAllCategories) {
          for (auto b : kAllCategories) {
            if (index_of(a) < index_of(b)) overlap_row(role, PairFilter::cross_category, a, b);
          }
        }
      }
      out.table("overlap_report.csv", {"category", "role", "filter", "mean_J", "pct_J_06_1", "pct_J_eq_1"},
                rows);

      rows.clear();
      const TextResources text;
      for (double share : {0.2, 0.8}) {
        MixSpec spec;
        spec.focus_share = share;
        const auto r = mixed_team_report(c, l, spec, text);
        const std::string table = share < 0.5 ? "low20_high80" : "low80_high20";
        auto add = [&](const std::string& feature, const std::string& with, const std::string& without) {
          rows.push_back({table, feature, with, without});
        };
        add("qualifying_papers", std::to_string(r.qualifying_papers), "");
        add("authors", std::to_string(r.collaborated.authors), std::to_string(r.not_collaborated.authors));
        add("mean_papers", num(r.collaborated.mean_papers), num(r.not_collaborated.mean_papers));
        add("team_size", num(r.collaborated.team_size), num(r.not_collaborated.team_size));
        add("citation", num(r.collaborated.citation), num(r.not_collaborated.citation));
        add("review_sentiment", num(r.collaborated.review_sentiment),
            num(r.not_collaborated.review_sentiment));
      }
      out.table("mixed_team.csv", {"table", "feature", "collaborated", "not_collaborated"}, rows);

      rows.clear();
      for (auto a : kAllCategories) {
        for (auto b : kAllCategories) {
          if (a == b) continue;
          const auto u = citation_uplift(c, l, a, b);
          rows.push_back({cat(a), cat(b), std::to_string(u.cited_papers), std::to_string(u.uncited_papers),
                          num(u.mean_cited), num(u.mean_uncited)});
        }
      }
      out.table("citation_uplift.csv",
                {"source", "target", "cited_papers", "uncited_papers", "mean_cited", "mean_uncited"}, rows);
      break;
    }

    case Stage::predict: {
      PredictionConfig pc;
      pc.features.split = config.split;
      pc.features.crn = config.crn;
      pc.features.pagerank = config.pagerank;
      pc.features.threads = config.threads;
      pc.test_fraction = config.test_fraction;
      pc.seed = config.seed;
      pc.forest = config.forest;
      pc.forest.threads = config.threads;
      pc.gbt = config.gbt;
      const auto result = run_prediction(corpus(), labels(), pc);

      Row header = {"author_id", "window_start", "window_end", "label", "split"};
      for (const auto& f : feature_names()) header.push_back(f);
      std::vector<Row> rows;
      for (const auto& s : result.samples) {
        Row row = {s.features.author_id, std::to_string(s.features.window.first),
                   std::to_string(s.features.window.last), cat(s.label), s.test ? "test" : "train"};
        for (double v : s.features.values) row.push_back(format_fixed(v, 9));
        rows.push_back(std::move(row));
      }
      out.table("features.csv", header, rows);

      Json j;
      j["protocol"] = {{"train_years", config.split.train_years},
                       {"gap_years", config.split.gap_years},
                       {"label", "full-career category"},
                       {"test_fraction", detail::number(config.test_fraction)},
                       {"train_authors", result.train.size()},
                       {"test_authors", result.test.size()},
                       {"excluded_authors", result.excluded.size()}};
      j["random_forest"] = detail::eval_json(result.forest_report);
      j["gbt"] = detail::eval_json(result.gbt_report);
      out.write("eval_report.json", [&](std::ostream& o) { o << j.dump(2) << '\n'; });

      auto importance_rows = [](const EvalReport& r) {
        std::vector<Row> out_rows;
        for (const auto& f : r.importances) out_rows.push_back({f.feature, format_fixed(f.score, 9)});
        return out_rows;
      };
      out.table("importances.csv", {"feature", "score"}, importance_rows(result.forest_report));
      out.table("importances_gbt.csv", {"feature", "score"}, importance_rows(result.gbt_report));
      rows.clear();
      for (std::size_t i = 0; i < result.gbt.training_loss().size(); ++i) {
        rows.push_back({std::to_string(i + 1), format_fixed(result.gbt.training_loss()[i], 9)});
      }
      out.table("gbt_training_loss.csv", {"round", "loss"}, rows);
      out.write("models/random_forest.model", [&](std::ostream& o) { result.forest.save(o); });
      out.write("models/gbt.model", [&](std::ostream& o) { result.gbt.save(o); });
      break;
    }

    case Stage::report: {
      for (const auto& f : write_report(config.out)) out.adopt(f);
      break;
    }
  }
  record(stage, out.files());
}

void Pipeline::record(Stage stage, const std::vector<fs::path>& outputs) {
  const fs::path path = config_.out / "manifest.json";
  Json previous;
  if (fs::exists(path)) {
    std::ifstream in(path);
    previous = Json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (previous.is_discarded()) previous = Json::object();
  }

  Json stage_files = Json::object();
  for (const auto& f : outputs) stage_files[f.generic_string()] = sha256_file(config_.out / f);
  Json stages = Json::object();
  for (auto s : kAllStages) {
    const std::string key(to_string(s));
    if (s == stage) {
      stages[key] = stage_files;
    } else if (previous.contains("stages") && previous["stages"].contains(key)) {
      stages[key] = previous["stages"][key];
    }
  }

  const auto& c = config_;
  Json kinds = Json::array();
  for (auto k : c.kinds) kinds.push_back(std::string(to_string(k)));
  Json j;
  j["tool"] = "peerscope";
  j["version"] = PEERSCOPE_VERSION;
  const bool carry = c.input.empty() && previous.contains("input");
  if (carry) {
    j["input"] = previous["input"];
  } else {
    j["input"] = {{"name", c.input.filename().generic_string()},
                  {"format", std::string(to_string(c.format))},
                  {"sha256", c.input.empty() ? std::string() : input_digest(c.input, c.format)}};
  }
  j["config"] = {
      {"seed", c.seed},
      {"threads", c.threads},
      {"thresholds",
       {{"high_rate", detail::number(c.thresholds.high_rate)},
        {"high_year_share", detail::number(c.thresholds.high_year_share)},
        {"low_rate", detail::number(c.thresholds.low_rate)},
        {"low_year_share", detail::number(c.thresholds.low_year_share)}}},
      {"crn_strict", c.crn.strict},
      {"pagerank",
       {{"damping", detail::number(c.pagerank.damping)},
        {"tolerance", detail::number(c.pagerank.tolerance, 15)},
        {"max_iterations", c.pagerank.max_iterations}}},
      {"betweenness_samples", c.betweenness_samples},
      {"top_k", c.top_k},
      {"graphs", c.graphs},
      {"kinds", kinds},
      {"split", {{"train_years", c.split.train_years}, {"gap_years", c.split.gap_years}}},
      {"test_fraction", detail::number(c.test_fraction)},
      {"forest",
       {{"trees", c.forest.trees},
        {"max_depth", c.forest.max_depth},
        {"min_leaf", c.forest.min_leaf},
        {"features_per_split", c.forest.features_per_split},
        {"bootstrap", c.forest.bootstrap}}},
      {"gbt",
       {{"rounds", c.gbt.rounds},
        {"learning_rate", detail::number(c.gbt.learning_rate)},
        {"max_depth", c.gbt.max_depth},
        {"lambda", detail::number(c.gbt.lambda)},
        {"subsample", detail::number(c.gbt.subsample)}}}};
  if (carry && previous.contains("config")) j["config"] = previous["config"];
  j["stages"] = stages;

  fs::create_directories(config_.out);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace peerscope
