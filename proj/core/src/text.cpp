#include "peerscope/text.hpp"

#include <cmath>
#include <fstream>

#include "peerscope/csv.hpp"
#include "peerscope/error.hpp"

namespace peerscope {
namespace {

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::string normalize_single(std::string_view raw, const std::string& file, std::size_t line) {
  auto tokens = tokenize(raw);
  if (tokens.size() != 1) {
    throw ValidationError(file, line, "token",
                          "'" + std::string(raw) + "' does not normalize to a single token");
  }
  return std::move(tokens.front());
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string_view to_string(Emotion e) noexcept {
  switch (e) {
    case Emotion::positive: return "positive";
    case Emotion::optimism: return "optimism";
    case Emotion::cheerfulness: return "cheerfulness";
    case Emotion::confusion: return "confusion";
    case Emotion::contentment: return "contentment";
  }
  return "?";
}

std::optional<Emotion> parse_emotion(std::string_view s) noexcept {
  for (auto e : kAllEmotions) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

std::string_view to_string(Role r) noexcept { return r == Role::reviewer ? "reviewer" : "editor"; }

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path) {
  auto in = open_text(path);
  csv::Reader reader(in, path.string());
  SentimentLexicon lex;
  lex.name = path.stem().string();
  csv::Row row;
  bool first = true;
  while (reader.next(row)) {
    if (std::exchange(first, false) && row.fields == std::vector<std::string>{"token", "polarity"}) {
      continue;
    }
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    if (row.fields.size() != 2) throw ValidationError(path.string(), row.line, "", "expected token,polarity");
    char* end = nullptr;
    const double value = std::strtod(row.fields[1].c_str(), &end);
    if (end == row.fields[1].c_str() || *end != '\0' || !(value >= -1.0 && value <= 1.0)) {
      throw ValidationError(path.string(), row.line, "polarity", "polarity must be a number in [-1, 1]");
    }
    lex.polarity[normalize_single(row.fields[0], path.string(), row.line)] = value;
  }
  if (lex.polarity.empty()) throw Error("sentiment lexicon " + path.string() + " is empty");
  return lex;
}

EmotionLexicons load_emotion_lexicons(const std::filesystem::path& path) {
  auto in = open_text(path);
  csv::Reader reader(in, path.string());
  EmotionLexicons lex;
  csv::Row row;
  bool first = true;
  while (reader.next(row)) {
    if (std::exchange(first, false) && row.fields == std::vector<std::string>{"token", "emotion"}) {
      continue;
    }
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    if (row.fields.size() != 2) throw ValidationError(path.string(), row.line, "", "expected token,emotion");
    auto emotion = parse_emotion(row.fields[1]);
    if (!emotion) throw ValidationError(path.string(), row.line, "emotion", "unknown emotion '" + row.fields[1] + "'");
    lex.words[static_cast<std::size_t>(*emotion)].insert(
        normalize_single(row.fields[0], path.string(), row.line));
  }
  for (auto e : kAllEmotions) {
    if (lex.words[static_cast<std::size_t>(e)].empty()) {
      throw Error("emotion lexicon " + path.string() + " has no '" + std::string(to_string(e)) + "' words");
    }
  }
  return lex;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  auto in = open_text(path);
  StopwordSet words;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.insert(normalize_single(line, path.string(), n));
  }
  return words;
}

double sentiment(std::string_view text, const SentimentLexicon& lexicon) {
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& token : tokenize(text)) {
    if (auto it = lexicon.polarity.find(token); it != lexicon.polarity.end()) {
      sum += it->second;
      ++matched;
    }
  }
  return matched ? sum / static_cast<double>(matched) : 0.0;
}

std::size_t review_length(std::string_view text, const StopwordSet& stopwords) {
  std::size_t n = 0;
  for (const auto& token : tokenize(text)) {
    if (!stopwords.contains(token)) ++n;
  }
  return n;
}

EmotionProfile lqi(std::string_view text, const EmotionLexicons& lexicons) {
  EmotionProfile profile{};
  const auto tokens = tokenize(text);
  if (tokens.empty()) return profile;
  for (const auto& token : tokens) {
    for (std::size_t e = 0; e < kEmotionCount; ++e) {
      if (lexicons.words[e].contains(token)) profile[e] += 1.0;
    }
  }
  for (auto& v : profile) v /= static_cast<double>(tokens.size());
  return profile;
}

DiversityIndex shannon_index(std::span<const std::string> occurrences, double log_base) {
  if (occurrences.empty()) throw Error("shannon_index: empty occurrence list");
  if (!(log_base > 0.0) || log_base == 1.0) throw Error("shannon_index: invalid logarithm base");
  DiversityIndex d;
  for (const auto& id : occurrences) ++d.counts[id];
  d.total = occurrences.size();
  d.support = d.counts.size();

  // H = ln N - (1/N) sum f_i ln f_i; exact for uniform multisets of singletons.
  const double n = static_cast<double>(d.total);
  double weighted = 0.0;
  for (const auto& [_, f] : d.counts) {
    if (f > 1) weighted += static_cast<double>(f) * std::log(static_cast<double>(f));
  }
  double h = std::log(n) - weighted / n;
  if (d.support == 1 || h < 0.0) h = 0.0;
  if (log_base != std::numbers::e) h /= std::log(log_base);
  d.entropy = h;
  return d;
}

std::vector<std::string> role_occurrences(const Corpus& corpus, std::string_view author, Role role,
                                          bool accepted_only) {
  std::vector<std::string> out;
  for (const auto* p : corpus.papers_of(author)) {
    if (accepted_only && !p->accepted()) continue;
    for (const auto& r : p->review_rounds) {
      if (role == Role::editor) {
        if (!r.editor_id.empty()) out.push_back(r.editor_id);
      } else {
        out.insert(out.end(), r.reviewer_ids.begin(), r.reviewer_ids.end());
      }
    }
  }
  return out;
}

DiversityIndex category_diversity(const Corpus& corpus, const Labels& labels, Category category,
                                  Role role, const DiversityOptions& options) {
  std::vector<std::string> global;
  for (const auto& [author, c] : labels) {
    if (c != category || !corpus.has_author(author)) continue;
    auto ids = role_occurrences(corpus, author, role, options.accepted_only);
    global.insert(global.end(), std::make_move_iterator(ids.begin()),
                  std::make_move_iterator(ids.end()));
  }
  if (global.empty()) {
    throw Error("category " + std::string(to_string(category)) + " has no " +
                std::string(to_string(role)) + " data");
  }
  return shannon_index(global, options.log_base);
}

std::optional<DiversityIndex> author_diversity(const Corpus& corpus, std::string_view author,
                                               Role role, const DiversityOptions& options) {
  auto ids = role_occurrences(corpus, author, role, options.accepted_only);
  if (ids.empty()) return std::nullopt;
  return shannon_index(ids, options.log_base);
}

std::optional<ReviewFeatures> paper_review_features(const PaperRecord& paper,
                                                    const TextResources& resources) {
  ReviewFeatures f;
  std::size_t texts = 0;
  for (const auto& r : paper.review_rounds) {
    for (const auto& text : r.review_texts) {
      f.sentiment += sentiment(text, resources.sentiment);
      f.length += static_cast<double>(review_length(text, resources.stopwords));
      const auto profile = lqi(text, resources.emotions);
      for (std::size_t e = 0; e < kEmotionCount; ++e) f.lqi[e] += profile[e];
      ++texts;
    }
  }
  if (texts == 0) return std::nullopt;
  const double n = static_cast<double>(texts);
  f.sentiment /= n;
  f.length /= n;
  for (auto& v : f.lqi) v /= n;
  f.papers_with_reviews = 1;
  return f;
}

ReviewFeatures author_review_features(const Corpus& corpus, std::string_view author,
                                      const TextResources& resources) {
  ReviewFeatures total;
  for (const auto* p : corpus.papers_of(author)) {
    auto f = paper_review_features(*p, resources);
    if (!f) continue;
    total.sentiment += f->sentiment;
    total.length += f->length;
    for (std::size_t e = 0; e < kEmotionCount; ++e) total.lqi[e] += f->lqi[e];
    ++total.papers_with_reviews;
  }
  if (total.papers_with_reviews == 0) {
    throw Error("author '" + std::string(author) + "' has no review text");
  }
  const double n = static_cast<double>(total.papers_with_reviews);
  total.sentiment /= n;
  total.length /= n;
  for (auto& v : total.lqi) v /= n;
  return total;
}

}  // namespace peerscope
