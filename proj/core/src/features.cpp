#include "peerscope/features.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "peerscope/error.hpp"

namespace peerscope {

void SplitSpec::validate() const {
  if (train_years < 1) throw Error("split: train_years must be >= 1");
  if (gap_years < 0) throw Error("split: gap_years must be >= 0");
}

CareerWindow career_window(int career_start, const SplitSpec& split) {
  split.validate();
  return {career_start, career_start + split.train_years - 1};
}

Corpus restrict_to_window(const Corpus& corpus, CareerWindow window) {
  std::vector<PaperRecord> papers;
  for (int year = window.first; year <= window.last; ++year) {
    for (const auto* p : corpus.papers_in_year(year)) papers.push_back(*p);
  }
  if (papers.empty()) {
    throw Error("no papers between " + std::to_string(window.first) + " and " +
                std::to_string(window.last));
  }
  std::set<std::string, std::less<>> ids;
  for (const auto& p : papers) ids.insert(p.paper_id);
  std::map<std::string, std::int64_t, std::less<>> cited_by;
  for (auto& p : papers) {
    std::erase_if(p.cited_paper_ids, [&](const std::string& id) { return !ids.contains(id); });
    for (const auto& id : p.cited_paper_ids) ++cited_by[id];
  }
  for (auto& p : papers) {
    auto it = cited_by.find(p.paper_id);
    p.citation_count = it == cited_by.end() ? 0 : it->second;
  }
  return Corpus::from_papers(std::move(papers), "window " + std::to_string(window.first) + "-" +
                                                    std::to_string(window.last));
}

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out = {
        "citation_total", "experience",         "topic_ratio",        "h_index",
        "team_size",      "has_reviews",        "review_sentiment",   "review_length",
        "reviewer_diversity", "editor_diversity"};
    for (std::string net : {"crn", "con", "ccn"}) {
      for (std::string m : {"degree", "betweenness", "closeness", "pagerank"}) {
        out.push_back(net + "_" + m);
      }
      out.push_back(net + (net == "ccn" ? "_reciprocity" : "_core"));
      out.push_back(net + "_connected");
    }
    return out;
  }();
  return names;
}

namespace {

struct NetworkScores {
  AuthorGraph graph;
  std::vector<double> degree, betweenness, closeness, pagerank, structural;

  NetworkScores(AuthorGraph g, const FeatureOptions& options) : graph(std::move(g)) {
    const std::size_t n = graph.node_count();
    degree.assign(n, 0.0);
    if (n >= 2) degree = degree_centrality(graph).scores;
    betweenness = betweenness_centrality(graph, {options.threads, 0, 0}).scores;
    closeness = closeness_centrality(graph, options.threads).scores;
    pagerank = peerscope::pagerank(graph, options.pagerank).scores;
    // n * PR: mean 1 regardless of window size.
    for (auto& v : pagerank) v *= static_cast<double>(n);
    structural.assign(n, 0.0);
    if (graph.directed()) {
      for (std::size_t v = 0; v < n; ++v) structural[v] = node_reciprocity(graph, v);
    } else {
      const auto shells = kshell(graph);
      for (std::size_t v = 0; v < n; ++v) structural[v] = static_cast<double>(shells.core[v]);
    }
  }

  void append(std::string_view author, std::vector<double>& out) const {
    const auto v = graph.find(author);
    if (!v || graph.degree(*v) == 0) {
      out.insert(out.end(), 6, 0.0);
      return;
    }
    out.insert(out.end(), {degree[*v], betweenness[*v], closeness[*v], pagerank[*v],
                           structural[*v], 1.0});
  }
};

}  // namespace

struct FeatureBuilder::Window {
  CareerWindow range;
  Corpus corpus;
  NetworkScores crn, con, ccn;

  Window(CareerWindow r, Corpus c, const FeatureOptions& options)
      : range(r),
        corpus(std::move(c)),
        crn(build_crn(corpus, {}, options.crn), options),
        con(build_con(corpus, {}), options),
        ccn(build_ccn(corpus, {}), options) {}
};

FeatureBuilder::FeatureBuilder(const Corpus& corpus, FeatureOptions options)
    : corpus_(corpus), options_(std::move(options)) {
  options_.split.validate();
}

FeatureBuilder::~FeatureBuilder() = default;

int FeatureBuilder::career_start(std::string_view author) const {
  if (!corpus_.has_author(author)) throw Error("unknown author '" + std::string(author) + "'");
  for (int year = corpus_.first_year(); year <= corpus_.last_year(); ++year) {
    for (const auto* p : corpus_.papers_in_year(year)) {
      if (std::find(p->author_ids.begin(), p->author_ids.end(), author) != p->author_ids.end()) {
        return year;
      }
    }
  }
  throw Error("author '" + std::string(author) + "' has no dated papers");
}

const FeatureBuilder::Window& FeatureBuilder::window(int start) {
  auto it = windows_.find(start);
  if (it == windows_.end()) {
    const auto range = career_window(start, options_.split);
    auto w = std::make_unique<Window>(range, restrict_to_window(corpus_, range), options_);
    it = windows_.emplace(start, std::move(w)).first;
  }
  return *it->second;
}

FeatureVector FeatureBuilder::build(std::string_view author) {
  return build(author, career_start(author));
}

FeatureVector FeatureBuilder::build(std::string_view author, int start) {
  const auto& w = window(start);
  if (!w.corpus.has_author(author)) {
    throw Error("author '" + std::string(author) + "' has no papers in " +
                std::to_string(w.range.first) + "-" + std::to_string(w.range.last));
  }
  FeatureVector fv;
  fv.author_id = std::string(author);
  fv.window = w.range;
  auto& v = fv.values;
  v.reserve(feature_names().size());

  const auto profile = author_profile(w.corpus, author, options_.profile);
  v.insert(v.end(), {static_cast<double>(profile.citation_total),
                     static_cast<double>(profile.experience), profile.topic_ratio,
                     static_cast<double>(profile.h_index), profile.team_size});

  bool reviewed = false;
  for (const auto* p : w.corpus.papers_of(author)) {
    for (const auto& r : p->review_rounds) reviewed = reviewed || !r.review_texts.empty();
  }
  if (reviewed) {
    const auto text = author_review_features(w.corpus, author, options_.text);
    v.insert(v.end(), {1.0, text.sentiment, text.length});
  } else {
    v.insert(v.end(), {0.0, 0.0, 0.0});
  }
  for (auto role : {Role::reviewer, Role::editor}) {
    const auto d = author_diversity(w.corpus, author, role, options_.diversity);
    v.push_back(d ? d->entropy : 0.0);
  }

  w.crn.append(author, v);
  w.con.append(author, v);
  w.ccn.append(author, v);
  return fv;
}

FeatureVector build_features(const Corpus& corpus, std::string_view author,
                             const FeatureOptions& options) {
  FeatureBuilder builder(corpus, options);
  return builder.build(author);
}

}  // namespace peerscope
