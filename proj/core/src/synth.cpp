#include "peerscope/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <type_traits>
#include <vector>

#include "peerscope/csv.hpp"
#include "peerscope/error.hpp"
#include "peerscope/format.hpp"
#include "peerscope/rng.hpp"

namespace peerscope {
namespace {

// ---- config keys ----------------------------------------------------------

template <typename T>
bool parse_number(const std::string& text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

struct Key {
  std::string name;
  std::function<bool(const std::string&)> parse;
  std::function<std::string()> print;

  template <typename T>
  Key(std::string key, T* slot)
      : name(std::move(key)),
        parse([slot](const std::string& text) { return parse_number(text, *slot); }),
        print([slot] {
          if constexpr (std::is_floating_point_v<T>) {
            return format_exact(*slot);
          } else {
            return std::to_string(*slot);
          }
        }) {}
};

std::string lower(Category c) {
  std::string s(to_string(c));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

std::vector<Key> keys_of(SynthConfig& c) {
  std::vector<Key> k = {{"seed", &c.seed}};
  for (auto cat : kAllCategories) k.push_back({"authors_" + lower(cat), &c.authors[index_of(cat)]});
  k.insert(k.end(), {{"first_year", &c.first_year},
                     {"years", &c.years},
                     {"min_career_years", &c.min_career_years},
                     {"lead_papers_min", &c.lead_papers_min},
                     {"lead_papers_max", &c.lead_papers_max},
                     {"coauthors_min", &c.coauthors_min},
                     {"coauthors_max", &c.coauthors_max},
                     {"cross_category_coauthor", &c.cross_category_coauthor}});
  for (auto cat : kAllCategories) {
    k.push_back({"accept_" + lower(cat), &c.accept_probability[index_of(cat)]});
  }
  k.insert(k.end(), {{"reviewer_pool", &c.reviewer_pool},
                     {"editor_pool", &c.editor_pool},
                     {"reviewers_min", &c.reviewers_min},
                     {"reviewers_max", &c.reviewers_max}});
  for (auto cat : kAllCategories) {
    const auto i = index_of(cat);
    k.push_back({"reviewer_concentration_" + lower(cat), &c.reviewer_concentration[i]});
    k.push_back({"reviewer_subpool_" + lower(cat), &c.reviewer_subpool[i]});
    k.push_back({"editor_concentration_" + lower(cat), &c.editor_concentration[i]});
    k.push_back({"editor_subpool_" + lower(cat), &c.editor_subpool[i]});
  }
  k.insert(k.end(), {{"second_round", &c.second_round},
                     {"citations_min", &c.citations_min},
                     {"citations_max", &c.citations_max}});
  for (auto from : kAllCategories) {
    for (auto to : kAllCategories) {
      k.push_back({"cite_weight_" + lower(from) + "_" + lower(to),
                   &c.citation_weight[index_of(from)][index_of(to)]});
    }
  }
  k.insert(k.end(), {{"citation_tail_scale", &c.citation_tail_scale},
                     {"citation_tail_shape", &c.citation_tail_shape}});
  for (auto cat : kAllCategories) {
    k.push_back({"positive_review_" + lower(cat), &c.positive_review[index_of(cat)]});
  }
  return k;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void require_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("synth: " + what + " must lie in [0, 1]");
}

// ---- review text ----------------------------------------------------------

constexpr const char* kPositive[] = {
    "The results are excellent and clearly presented.",
    "This is a novel and important contribution.",
    "The analysis is rigorous and convincing.",
    "I enjoyed reading this elegant paper.",
    "The manuscript is well written and thorough.",
    "A valuable and insightful study, I recommend publication.",
    "The method is sound and the checks are careful.",
    "The discussion is comprehensive and the conclusions are solid.",
};

constexpr const char* kNegative[] = {
    "The derivation is unclear and partly incorrect.",
    "The contribution is incremental and the discussion lacks depth.",
    "Several errors make the main claim unconvincing.",
    "The presentation is confusing and the motivation is weak.",
    "Key references are missing and the analysis is flawed.",
    "Unfortunately the results are questionable and vague.",
    "The estimates are sloppy and the error budget is inadequate.",
    "The comparison with earlier work is superficial and misleading.",
};

constexpr const char* kTopics[] = {"hep-th",  "hep-ph",  "hep-ex",   "hep-lat",
                                   "gr-qc",   "astro-ph", "nucl-th", "quant-ph",
                                   "math-ph", "cond-mat"};

std::string numbered(char prefix, std::size_t n, int width) {
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

struct Author {
  std::string id;
  Category intent;
  int start;
  int end;
  std::array<std::string, 2> home_topics;
};

/// `count` distinct draws from [0, n) (all of them when count >= n), sorted.
std::vector<std::size_t> distinct_draws(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> picked;
  if (count >= n) {
    for (std::size_t i = 0; i < n; ++i) picked.push_back(i);
    return picked;
  }
  while (picked.size() < count) {
    const auto x = rng.below(n);
    if (std::find(picked.begin(), picked.end(), x) == picked.end()) picked.push_back(x);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::size_t weighted_pick(Rng& rng, const std::array<double, kCategoryCount>& w) {
  const double total = w[0] + w[1] + w[2];
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (u < w[i]) return i;
    u -= w[i];
  }
  return kCategoryCount - 1;
}

}  // namespace

void SynthConfig::validate() const {
  std::size_t total = 0;
  for (auto n : authors) total += n;
  if (total < 2) throw Error("synth: need at least two authors");
  if (years < 1) throw Error("synth: years must be >= 1");
  if (min_career_years < 1 || min_career_years > years) {
    throw Error("synth: min_career_years must lie in [1, years]");
  }
  if (lead_papers_min < 1 || lead_papers_max < lead_papers_min) {
    throw Error("synth: need 1 <= lead_papers_min <= lead_papers_max");
  }
  if (coauthors_max < coauthors_min) throw Error("synth: coauthors_max < coauthors_min");
  if (reviewer_pool < 1 || editor_pool < 1) throw Error("synth: reviewer and editor pools must be >= 1");
  if (reviewers_min < 1 || reviewers_max < reviewers_min) {
    throw Error("synth: need 1 <= reviewers_min <= reviewers_max");
  }
  if (citations_max < citations_min) throw Error("synth: citations_max < citations_min");
  if (!(citation_tail_scale > 0.0) || !(citation_tail_shape > 0.0)) {
    throw Error("synth: citation tail parameters must be positive");
  }
  require_probability(cross_category_coauthor, "cross_category_coauthor");
  require_probability(second_round, "second_round");
  for (auto c : kAllCategories) {
    const auto i = index_of(c);
    const std::string name(to_string(c));
    require_probability(accept_probability[i], "accept probability of " + name);
    require_probability(reviewer_concentration[i], "reviewer concentration of " + name);
    require_probability(editor_concentration[i], "editor concentration of " + name);
    require_probability(positive_review[i], "positive review share of " + name);
    if (reviewer_concentration[i] > 0.0 && reviewer_subpool[i] == 0) {
      throw Error("synth: reviewer subpool of " + name + " is empty but concentration is positive");
    }
    if (editor_concentration[i] > 0.0 && editor_subpool[i] == 0) {
      throw Error("synth: editor subpool of " + name + " is empty but concentration is positive");
    }
    double row = 0.0;
    for (double w : citation_weight[i]) {
      if (!(w >= 0.0)) throw Error("synth: citation weights must be non-negative");
      row += w;
    }
    if (!(row > 0.0)) throw Error("synth: citation weights of " + name + " sum to zero");
  }
}

SynthConfig parse_synth_config(std::istream& in, const std::string& name) {
  SynthConfig config;
  auto keys = keys_of(config);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ValidationError(name, lineno, "", "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
    if (it == keys.end()) throw ValidationError(name, lineno, key, "unknown key '" + key + "'");
    if (!it->parse(value)) throw ValidationError(name, lineno, key, "malformed value '" + value + "'");
  }
  config.validate();
  return config;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_synth_config(in, path.string());
}

void write_synth_config(const SynthConfig& config, std::ostream& out) {
  SynthConfig copy = config;
  for (const auto& key : keys_of(copy)) {
    out << key.name << " = " << key.print() << '\n';
  }
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int last_year = config.first_year + config.years - 1;

  // Authors: intents are shuffled over the id range.
  std::vector<Category> intents;
  for (auto c : kAllCategories) intents.insert(intents.end(), config.authors[index_of(c)], c);
  for (std::size_t i = intents.size(); i > 1; --i) std::swap(intents[i - 1], intents[rng.below(i)]);
  const int width = std::max<int>(3, static_cast<int>(std::to_string(intents.size()).size()));
  std::vector<Author> authors;
  for (std::size_t i = 0; i < intents.size(); ++i) {
    Author a;
    a.id = numbered('A', i + 1, width);
    a.intent = intents[i];
    a.start = config.first_year +
              static_cast<int>(rng.below(static_cast<std::uint64_t>(config.years - config.min_career_years + 1)));
    a.end = static_cast<int>(rng.between(a.start + config.min_career_years - 1, last_year));
    const auto topics = distinct_draws(rng, std::size(kTopics), 2);
    a.home_topics = {kTopics[topics[0]], kTopics[topics[1]]};
    authors.push_back(std::move(a));
  }

  std::vector<PaperRecord> papers;
  std::vector<Category> lead_intent;
  // Accepted papers from earlier years, by lead intent.
  std::array<std::vector<std::size_t>, kCategoryCount> citable;
  std::array<std::vector<std::size_t>, kCategoryCount> accepted_this_year;

  for (int year = config.first_year; year <= last_year; ++year) {
    std::vector<std::size_t> active;
    std::array<std::vector<std::size_t>, kCategoryCount> active_by;
    for (std::size_t i = 0; i < authors.size(); ++i) {
      if (year < authors[i].start || year > authors[i].end) continue;
      active.push_back(i);
      active_by[index_of(authors[i].intent)].push_back(i);
    }

    for (std::size_t lead : active) {
      const auto intent = authors[lead].intent;
      const auto count = static_cast<std::size_t>(
          rng.between(static_cast<std::int64_t>(config.lead_papers_min),
                      static_cast<std::int64_t>(config.lead_papers_max)));
      for (std::size_t k = 0; k < count; ++k) {
        PaperRecord p;
        p.paper_id = numbered('P', papers.size() + 1, 6);
        p.title = "Synthetic study " + p.paper_id;
        p.submission_year = year;
        p.author_ids.push_back(authors[lead].id);
        std::vector<std::size_t> team = {lead};

        const auto coauthors = static_cast<std::size_t>(
            rng.between(static_cast<std::int64_t>(config.coauthors_min),
                        static_cast<std::int64_t>(config.coauthors_max)));
        for (std::size_t c = 0; c < coauthors; ++c) {
          std::vector<std::size_t> pool;
          const bool cross = rng.bernoulli(config.cross_category_coauthor);
          for (auto cat : kAllCategories) {
            if ((cat == intent) == cross) continue;
            for (auto i : active_by[index_of(cat)]) {
              if (std::find(team.begin(), team.end(), i) == team.end()) pool.push_back(i);
            }
          }
          if (pool.empty()) {
            for (auto i : active) {
              if (std::find(team.begin(), team.end(), i) == team.end()) pool.push_back(i);
            }
          }
          if (pool.empty()) break;
          const auto pick = pool[rng.below(pool.size())];
          team.push_back(pick);
          p.author_ids.push_back(authors[pick].id);
        }

        p.decision = rng.bernoulli(config.accept_probability[index_of(intent)]) ? Decision::accepted
                                                                              : Decision::rejected;
        std::vector<std::string> topic_pool;
        for (auto i : team) {
          for (const auto& t : authors[i].home_topics) topic_pool.push_back(t);
        }
        const auto topic_count = static_cast<std::size_t>(rng.between(1, 2));
        for (std::size_t t = 0; t < topic_count; ++t) {
          p.topics.insert(topic_pool[rng.below(topic_pool.size())]);
        }

        // Assignment routing by the highest-ranked intent on the team.
        Category route = Category::Low;
        for (auto i : team) route = std::min(route, authors[i].intent);
        const auto r = index_of(route);
        const bool sub_reviewers = rng.bernoulli(config.reviewer_concentration[r]);
        const bool sub_editor = rng.bernoulli(config.editor_concentration[r]);
        const std::string rtag = sub_reviewers ? "R" + lower(route).substr(0, 1) : "R";
        const std::size_t rpool = sub_reviewers ? config.reviewer_subpool[r] : config.reviewer_pool;
        const std::string etag = sub_editor ? "E" + lower(route).substr(0, 1) : "E";
        const std::size_t epool = sub_editor ? config.editor_subpool[r] : config.editor_pool;

        const std::string editor = numbered('E', rng.below(epool) + 1, 3).replace(0, 1, etag);
        const auto reviewer_count = static_cast<std::size_t>(
            rng.between(static_cast<std::int64_t>(config.reviewers_min),
                        static_cast<std::int64_t>(config.reviewers_max)));
        std::vector<std::string> reviewers;
        for (auto x : distinct_draws(rng, rpool, reviewer_count)) {
          reviewers.push_back(numbered('R', x + 1, 4).replace(0, 1, rtag));
        }
        const int rounds = p.accepted() && rng.bernoulli(config.second_round) ? 2 : 1;
        const double positive = config.positive_review[index_of(intent)];
        for (int round = 1; round <= rounds; ++round) {
          ReviewRound rr;
          rr.round_index = round;
          rr.editor_id = editor;
          for (const auto& reviewer : reviewers) {
            std::string text;
            const auto sentences = rng.between(2, 4);
            for (std::int64_t s = 0; s < sentences; ++s) {
              const bool good = rng.bernoulli(positive);
              const char* sentence = good ? kPositive[rng.below(std::size(kPositive))]
                                          : kNegative[rng.below(std::size(kNegative))];
              if (!text.empty()) text += ' ';
              text += sentence;
            }
            rr.reviewer_ids.push_back(reviewer);
            rr.review_texts.push_back(std::move(text));
          }
          p.review_rounds.push_back(std::move(rr));
        }

        const auto cites = static_cast<std::size_t>(
            rng.between(static_cast<std::int64_t>(config.citations_min),
                        static_cast<std::int64_t>(config.citations_max)));
        for (std::size_t c = 0; c < cites; ++c) {
          auto target = weighted_pick(rng, config.citation_weight[index_of(intent)]);
          if (citable[target].empty()) {
            const auto it = std::find_if(citable.begin(), citable.end(),
                                         [](const auto& v) { return !v.empty(); });
            if (it == citable.end()) break;
            target = static_cast<std::size_t>(it - citable.begin());
          }
          const auto& pool = citable[target];
          p.cited_paper_ids.insert(papers[pool[rng.below(pool.size())]].paper_id);
        }

        if (p.accepted()) accepted_this_year[index_of(intent)].push_back(papers.size());
        lead_intent.push_back(intent);
        papers.push_back(std::move(p));
      }
    }
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      citable[c].insert(citable[c].end(), accepted_this_year[c].begin(), accepted_this_year[c].end());
      accepted_this_year[c].clear();
    }
  }

  std::map<std::string, std::int64_t> cited_by;
  for (const auto& p : papers) {
    for (const auto& id : p.cited_paper_ids) ++cited_by[id];
  }
  for (auto& p : papers) {
    if (!p.accepted()) continue;
    const double tail = rng.pareto(config.citation_tail_scale, config.citation_tail_shape) -
                        config.citation_tail_scale;
    p.citation_count = cited_by[p.paper_id] + static_cast<std::int64_t>(std::floor(tail));
  }

  SynthCorpus out{Corpus::from_papers(std::move(papers), "synth"), {}};
  for (const auto& a : authors) out.intents.emplace(a.id, a.intent);
  return out;
}

void write_intents_csv(const Labels& intents, std::ostream& out) {
  csv::write_row(out, {"author_id", "intent"});
  for (const auto& [author, intent] : intents) {
    csv::write_row(out, {author, std::string(to_string(intent))});
  }
}

}  // namespace peerscope
