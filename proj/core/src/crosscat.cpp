#include "peerscope/crosscat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "peerscope/error.hpp"
#include "peerscope/parallel.hpp"

namespace peerscope {
namespace {

std::optional<Category> label_of(const Labels& labels, const std::string& author) {
  auto it = labels.find(author);
  return it == labels.end() ? std::nullopt : std::optional(it->second);
}

bool has_author_in(const PaperRecord& p, const Labels& labels, Category c) {
  return std::any_of(p.author_ids.begin(), p.author_ids.end(),
                     [&](const auto& a) { return label_of(labels, a) == c; });
}

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

MixedTeamColumn summarize(const std::vector<PaperRefs>& per_author, const TextResources& resources) {
  MixedTeamColumn col;
  std::vector<double> papers, team, cites, sentiment;
  for (const auto& refs : per_author) {
    if (refs.empty()) continue;
    ++col.authors;
    papers.push_back(static_cast<double>(refs.size()));
    double t = 0.0, c = 0.0, s = 0.0;
    std::size_t reviewed = 0;
    for (const auto* p : refs) {
      t += static_cast<double>(p->author_ids.size());
      c += static_cast<double>(p->citation_count);
      if (auto f = paper_review_features(*p, resources)) {
        s += f->sentiment;
        ++reviewed;
      }
    }
    team.push_back(t / static_cast<double>(refs.size()));
    cites.push_back(c);
    if (reviewed) sentiment.push_back(s / static_cast<double>(reviewed));
  }
  col.mean_papers = mean_of(papers);
  col.team_size = mean_of(team);
  col.citation = mean_of(cites);
  col.review_sentiment = mean_of(sentiment);
  return col;
}

std::vector<std::string> role_set(const Corpus& corpus, const std::string& author, Role role) {
  auto ids = role_occurrences(corpus, author, role, /*accepted_only=*/false);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

std::size_t ClassEdgeMatrix::count(Category from, Category to) const {
  auto r = index_of(from), c = index_of(to);
  if (!directed && r > c) std::swap(r, c);
  return counts[r][c];
}

double ClassEdgeMatrix::fraction(Category from, Category to) const {
  return total ? static_cast<double>(count(from, to)) / static_cast<double>(total) : 0.0;
}

ClassEdgeMatrix class_edge_matrix(const AuthorGraph& g) {
  if (g.edge_count() == 0) throw UndefinedValueError("class edge matrix undefined: graph has no edges");
  ClassEdgeMatrix m;
  m.directed = g.directed();
  for (const auto& e : g.edges()) {
    auto a = g.label(e.source);
    auto b = g.label(e.target);
    if (!a || !b) {
      throw Error("class edge matrix: node '" + g.id(a ? e.target : e.source) + "' is unlabeled");
    }
    auto r = index_of(*a), c = index_of(*b);
    if (!m.directed && r > c) std::swap(r, c);
    ++m.counts[r][c];
    ++m.total;
  }
  return m;
}

CitationUplift citation_uplift(const Corpus& corpus, const Labels& labels, Category source,
                               Category target) {
  CitationUplift out;
  double cited_sum = 0.0, uncited_sum = 0.0;
  for (const auto& p : corpus.papers()) {
    if (!has_author_in(p, labels, target)) continue;
    bool cited = false;
    for (const auto* citing : corpus.citing_papers(p.paper_id)) {
      if (has_author_in(*citing, labels, source)) {
        cited = true;
        break;
      }
    }
    if (cited) {
      ++out.cited_papers;
      cited_sum += static_cast<double>(p.citation_count);
    } else {
      ++out.uncited_papers;
      uncited_sum += static_cast<double>(p.citation_count);
    }
  }
  if (out.cited_papers) out.mean_cited = cited_sum / static_cast<double>(out.cited_papers);
  if (out.uncited_papers) out.mean_uncited = uncited_sum / static_cast<double>(out.uncited_papers);
  return out;
}

bool matches_mix(const PaperRecord& paper, const Labels& labels, const MixSpec& spec) {
  const auto n = static_cast<std::int64_t>(paper.author_ids.size());
  if (n < 2) return false;
  std::int64_t focus = 0;
  for (const auto& a : paper.author_ids) {
    auto c = label_of(labels, a);
    if (c == spec.focus) {
      ++focus;
    } else if (c != spec.partner) {
      return false;
    }
  }
  const double exact = spec.focus_share * static_cast<double>(n);
  const auto nearest = std::clamp<std::int64_t>(std::llround(exact), 1, n - 1);
  return focus == nearest && std::abs(static_cast<double>(nearest) - exact) <= spec.tolerance + 1e-12;
}

MixedTeamReport mixed_team_report(const Corpus& corpus, const Labels& labels, const MixSpec& spec,
                                  const TextResources& resources) {
  if (!(spec.focus_share > 0.0 && spec.focus_share < 1.0)) {
    throw Error("mixed team share must lie in (0, 1)");
  }
  if (spec.tolerance < 0.0) throw Error("mixed team tolerance must be non-negative");
  if (spec.focus == spec.partner) throw Error("mixed team categories must differ");

  MixedTeamReport report;
  report.spec = spec;
  std::map<std::string, PaperRefs> with;
  for (const auto& p : corpus.papers()) {
    if (!matches_mix(p, labels, spec)) continue;
    ++report.qualifying_papers;
    for (const auto& a : p.author_ids) {
      if (label_of(labels, a) == spec.focus) with[a].push_back(&p);
    }
  }
  if (report.empty()) return report;

  std::vector<PaperRefs> collaborated, alone;
  for (const auto& [author, refs] : with) {
    collaborated.push_back(refs);
    PaperRefs others;
    for (const auto* p : corpus.papers_of(author)) {
      if (!has_author_in(*p, labels, spec.partner)) others.push_back(p);
    }
    alone.push_back(std::move(others));
  }
  report.collaborated = summarize(collaborated, resources);
  report.not_collaborated = summarize(alone, resources);
  return report;
}

std::string_view to_string(PairFilter f) noexcept {
  switch (f) {
    case PairFilter::all: return "all";
    case PairFilter::never_collaborated: return "never_collaborated";
    case PairFilter::cross_category: return "cross_category";
  }
  return "?";
}

std::string OverlapReport::category_label() const {
  if (filter == PairFilter::cross_category) {
    return std::string(to_string(category)) + "-" + std::string(to_string(other));
  }
  return std::string(to_string(category));
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::size_t inter = 0;
  for (std::size_t i = 0, j = 0; i < sa.size() && j < sb.size();) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      ++inter, ++i, ++j;
    }
  }
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

OverlapReport assignment_overlap(const Corpus& corpus, const Labels& labels, Role role,
                                 PairFilter filter, Category category,
                                 std::optional<Category> other, unsigned threads) {
  const bool cross = filter == PairFilter::cross_category;
  if (cross && (!other || *other == category)) {
    throw Error("cross-category overlap needs two distinct categories");
  }
  OverlapReport report;
  report.role = role;
  report.filter = filter;
  report.category = category;
  report.other = cross ? *other : category;

  struct Member {
    std::string id;
    std::vector<std::string> ids;  // sorted, distinct
  };
  auto members_of = [&](Category c) {
    std::vector<Member> out;
    for (const auto& [author, label] : labels) {
      if (label != c || !corpus.has_author(author)) continue;
      auto ids = role_set(corpus, author, role);
      if (!ids.empty()) out.push_back({author, std::move(ids)});
    }
    return out;
  };
  const auto left = members_of(category);
  const auto right = cross ? members_of(*other) : std::vector<Member>{};
  report.authors = left.size() + right.size();
  if (cross ? (left.empty() || right.empty()) : left.size() < 2) {
    throw Error("overlap for " + report.category_label() + " needs at least two authors with " +
                std::string(to_string(role)) + " data");
  }

  std::set<std::pair<std::string, std::string>> coauthored;
  if (filter == PairFilter::never_collaborated) {
    for (const auto& p : corpus.papers()) {
      for (const auto& a : p.author_ids) {
        for (const auto& b : p.author_ids) {
          if (a < b) coauthored.emplace(a, b);
        }
      }
    }
  }

  struct Partial {
    std::size_t pairs = 0, high = 0, equal = 0;
    double sum = 0.0;
  };
  std::vector<Partial> partial(left.size());
  parallel_for(left.size(), threads, [&](std::size_t i) {
    auto& acc = partial[i];
    const auto& others = cross ? right : left;
    for (std::size_t j = cross ? 0 : i + 1; j < others.size(); ++j) {
      const auto& a = left[i];
      const auto& b = others[j];
      if (!coauthored.empty()) {
        auto key = a.id < b.id ? std::pair(a.id, b.id) : std::pair(b.id, a.id);
        if (coauthored.contains(key)) continue;
      }
      std::vector<std::string> common;
      std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                            std::back_inserter(common));
      const std::size_t inter = common.size();
      const std::size_t uni = a.ids.size() + b.ids.size() - inter;
      ++acc.pairs;
      acc.sum += static_cast<double>(inter) / static_cast<double>(uni);
      if (5 * inter >= 3 * uni) ++acc.high;  // J >= 0.6, exactly
      if (inter == uni) ++acc.equal;
    }
  });

  std::size_t high = 0, equal = 0;
  double sum = 0.0;
  for (const auto& p : partial) {
    report.pairs += p.pairs;
    high += p.high;
    equal += p.equal;
    sum += p.sum;
  }
  if (report.pairs) {
    const double n = static_cast<double>(report.pairs);
    report.mean_j = sum / n;
    report.pct_j_06_1 = 100.0 * static_cast<double>(high) / n;
    report.pct_j_eq_1 = 100.0 * static_cast<double>(equal) / n;
  }
  return report;
}

}  // namespace peerscope
