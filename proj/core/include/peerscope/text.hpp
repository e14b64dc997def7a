#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/corpus.hpp"

namespace peerscope {

/// Lowercases ASCII letters and splits on runs of ASCII characters that are
/// not letters or digits. Bytes >= 0x80 are kept inside tokens so UTF-8
/// words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct SentimentLexicon {
  std::string name;
  std::unordered_map<std::string, double> polarity;  // normalized token -> [-1, 1]
};

enum class Emotion { positive, optimism, cheerfulness, confusion, contentment };
inline constexpr std::size_t kEmotionCount = 5;
inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::positive, Emotion::optimism, Emotion::cheerfulness, Emotion::confusion,
    Emotion::contentment};
std::string_view to_string(Emotion e) noexcept;
std::optional<Emotion> parse_emotion(std::string_view s) noexcept;

struct EmotionLexicons {
  std::array<std::set<std::string, std::less<>>, kEmotionCount> words;
};

using StopwordSet = std::set<std::string, std::less<>>;
using EmotionProfile = std::array<double, kEmotionCount>;

/// CSV `token,polarity`; a header row with those names is skipped.
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path);
/// CSV `token,emotion`; a header row with those names is skipped.
EmotionLexicons load_emotion_lexicons(const std::filesystem::path& path);
/// One token per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

const SentimentLexicon& default_sentiment_lexicon();
const EmotionLexicons& default_emotion_lexicons();
const StopwordSet& default_stopwords();

struct TextResources {
  SentimentLexicon sentiment = default_sentiment_lexicon();
  EmotionLexicons emotions = default_emotion_lexicons();
  StopwordSet stopwords = default_stopwords();
};

/// Mean polarity of tokens present in the lexicon, 0 when none match.
double sentiment(std::string_view text, const SentimentLexicon& lexicon);

/// Number of tokens not in `stopwords`.
std::size_t review_length(std::string_view text, const StopwordSet& stopwords);

/// Per emotion: matched tokens / all tokens. All zeros for empty text.
EmotionProfile lqi(std::string_view text, const EmotionLexicons& lexicons);

struct DiversityIndex {
  double entropy = 0.0;
  std::size_t support = 0;  // distinct ids
  std::size_t total = 0;    // occurrences
  std::map<std::string, std::size_t> counts;
};

/// Shannon entropy of an id multiset, natural log unless `log_base` is given.
/// Throws Error on an empty list.
DiversityIndex shannon_index(std::span<const std::string> occurrences,
                             double log_base = std::numbers::e);

enum class Role { reviewer, editor };
std::string_view to_string(Role r) noexcept;

struct DiversityOptions {
  /// Only accepted ("published") papers contribute ids.
  bool accepted_only = true;
  double log_base = std::numbers::e;
};

/// Reviewer or editor ids of the author's papers, one entry per
/// (paper, round, id) incidence.
std::vector<std::string> role_occurrences(const Corpus& corpus, std::string_view author,
                                          Role role, bool accepted_only);

/// Entropy of the category-wide list built by appending every member's
/// occurrences. Throws Error when the list is empty.
DiversityIndex category_diversity(const Corpus& corpus, const Labels& labels, Category category,
                                  Role role, const DiversityOptions& options = {});

/// The same entropy computed on one author's own list; nullopt when empty.
std::optional<DiversityIndex> author_diversity(const Corpus& corpus, std::string_view author,
                                               Role role, const DiversityOptions& options = {});

struct ReviewFeatures {
  double sentiment = 0.0;
  double length = 0.0;
  EmotionProfile lqi{};
  std::size_t papers_with_reviews = 0;
};

/// Per-paper means over every review text of every round; nullopt when the
/// paper has no review text.
std::optional<ReviewFeatures> paper_review_features(const PaperRecord& paper,
                                                    const TextResources& resources);

/// Mean of the per-paper values over the author's papers that carry review
/// text. Throws Error when there are none.
ReviewFeatures author_review_features(const Corpus& corpus, std::string_view author,
                                      const TextResources& resources);

}  // namespace peerscope
