#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "peerscope/corpus.hpp"
#include "peerscope/metrics.hpp"
#include "peerscope/netbuild.hpp"
#include "peerscope/profile.hpp"
#include "peerscope/text.hpp"

namespace peerscope {

/// Train on the first `train_years` career years, skip `gap_years`, and
/// predict the category of authors whose career reaches the label year.
struct SplitSpec {
  int train_years = 3;
  int gap_years = 2;

  /// Career years (1-based) needed before an author can be labeled.
  int label_year() const noexcept { return train_years + gap_years; }
  /// Throws Error unless train_years >= 1 and gap_years >= 0.
  void validate() const;
};

/// Inclusive year range.
struct CareerWindow {
  int first = 0;
  int last = 0;
  bool contains(int year) const noexcept { return year >= first && year <= last; }
};

CareerWindow career_window(int career_start, const SplitSpec& split);

/// The papers dated inside `window`. Citation links leaving the window are
/// dropped and citation_count is recomputed as the number of in-window
/// citing papers, so nothing after window.last leaks in. Reads only
/// in-window records. Throws Error when the window is empty.
Corpus restrict_to_window(const Corpus& corpus, CareerWindow window);

/// Feature order of every vector: author profile, review text, then
/// degree/betweenness/closeness/PageRank plus core number (CRN, CON) or
/// reciprocity (CCN) and a presence flag per network.
const std::vector<std::string>& feature_names();

struct FeatureOptions {
  SplitSpec split;
  ProfileOptions profile;
  DiversityOptions diversity;
  CrnOptions crn;
  PageRankOptions pagerank;
  TextResources text;
  unsigned threads = 1;
};

struct FeatureVector {
  std::string author_id;
  CareerWindow window;
  std::vector<double> values;  // aligned with feature_names()
};

/// Builds window-restricted feature vectors. Window corpora and their
/// networks are cached per career-start year, so authors who start in the
/// same year share one set of graphs. Not thread-safe.
class FeatureBuilder {
 public:
  explicit FeatureBuilder(const Corpus& corpus, FeatureOptions options = {});
  ~FeatureBuilder();
  FeatureBuilder(const FeatureBuilder&) = delete;
  FeatureBuilder& operator=(const FeatureBuilder&) = delete;

  /// First submission year, found by scanning years upward so no later
  /// record is touched. Throws Error for an unknown author.
  int career_start(std::string_view author) const;

  /// Throws Error when the author has no papers in the window.
  FeatureVector build(std::string_view author);
  FeatureVector build(std::string_view author, int career_start);

  const FeatureOptions& options() const noexcept { return options_; }

 private:
  struct Window;
  const Window& window(int career_start);

  const Corpus& corpus_;
  FeatureOptions options_;
  std::map<int, std::unique_ptr<Window>> windows_;
};

/// One-off convenience wrapper around FeatureBuilder.
FeatureVector build_features(const Corpus& corpus, std::string_view author,
                             const FeatureOptions& options = {});

}  // namespace peerscope
