#include "peerscope/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "peerscope/error.hpp"

namespace peerscope {

std::int64_t h_index(std::span<const std::int64_t> citations_per_paper) {
  std::vector<std::int64_t> sorted(citations_per_paper.begin(), citations_per_paper.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t h = 0;
  while (h < static_cast<std::int64_t>(sorted.size()) && sorted[h] >= h + 1) ++h;
  return h;
}

double topic_ratio(const PaperRefs& author_papers) {
  if (author_papers.empty()) throw Error("topic_ratio: author has no papers");
  std::set<std::string_view> topics;
  for (const auto* p : author_papers) topics.insert(p->topics.begin(), p->topics.end());
  return static_cast<double>(topics.size()) / static_cast<double>(author_papers.size());
}

double team_size(const PaperRefs& author_papers) {
  if (author_papers.empty()) throw Error("team_size: author has no papers");
  double total = 0.0;
  for (const auto* p : author_papers) total += static_cast<double>(p->author_ids.size());
  return total / static_cast<double>(author_papers.size());
}

ProfileFeatures author_profile(const Corpus& corpus, std::string_view author,
                               const ProfileOptions& options) {
  const auto papers = corpus.papers_of(author);
  ProfileFeatures f;
  std::vector<std::int64_t> citations;
  citations.reserve(papers.size());
  for (const auto* p : papers) {
    f.citation_total += p->citation_count;
    citations.push_back(p->citation_count);
    if (!options.experience_accepted_only || p->accepted()) ++f.experience;
  }
  f.h_index = h_index(citations);
  f.topic_ratio = topic_ratio(papers);
  f.team_size = team_size(papers);
  return f;
}

CategoryProfileSummary category_summary(const Corpus& corpus, const Labels& labels,
                                        Category category, const ProfileOptions& options) {
  std::vector<ProfileFeatures> members;
  for (const auto& [author, c] : labels) {
    if (c == category && corpus.has_author(author)) {
      members.push_back(author_profile(corpus, author, options));
    }
  }
  if (members.empty()) {
    throw Error("category " + std::string(to_string(category)) + " has no members");
  }

  const double n = static_cast<double>(members.size());
  CategoryProfileSummary s;
  s.members = members.size();
  double mean_citations = 0.0;
  for (const auto& m : members) {
    mean_citations += static_cast<double>(m.citation_total);
    s.mean_experience += static_cast<double>(m.experience);
    s.topic_diversity += m.topic_ratio;
    s.mean_h_index += static_cast<double>(m.h_index);
    s.mean_team_size += m.team_size;
  }
  mean_citations /= n;
  s.mean_experience /= n;
  s.topic_diversity /= n;
  s.mean_h_index /= n;
  s.mean_team_size /= n;

  double ss = 0.0;
  for (const auto& m : members) {
    const double d = static_cast<double>(m.citation_total) - mean_citations;
    ss += d * d;
  }
  const double denom = options.sample_stddev ? n - 1.0 : n;
  s.citation_index = denom > 0.0 ? std::sqrt(ss / denom) : 0.0;
  return s;
}

}  // namespace peerscope
