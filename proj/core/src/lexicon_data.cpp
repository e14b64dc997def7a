// Bundled default lexicons. Small, review-oriented, and fixed so that runs
// are reproducible without external resources.

#include <utility>

#include "peerscope/text.hpp"

namespace peerscope {
namespace {

constexpr std::pair<const char*, double> kPolarity[] = {
    {"excellent", 1.0},     {"outstanding", 1.0},   {"superb", 1.0},        {"impressive", 0.8},
    {"important", 0.6},     {"interesting", 0.5},   {"novel", 0.6},         {"clear", 0.5},
    {"clearly", 0.4},       {"convincing", 0.7},    {"solid", 0.6},         {"rigorous", 0.7},
    {"careful", 0.5},       {"thorough", 0.6},      {"elegant", 0.8},       {"nice", 0.6},
    {"good", 0.7},          {"great", 0.8},         {"valuable", 0.7},      {"useful", 0.5},
    {"significant", 0.5},   {"strong", 0.6},        {"correct", 0.5},       {"sound", 0.5},
    {"recommend", 0.6},     {"publication", 0.2},   {"well", 0.4},          {"insightful", 0.8},
    {"comprehensive", 0.6}, {"original", 0.6},      {"complete", 0.4},      {"accurate", 0.5},
    {"compelling", 0.8},    {"pleased", 0.7},       {"happy", 0.7},         {"enjoyed", 0.8},
    {"poor", -0.7},         {"bad", -0.7},          {"wrong", -0.8},        {"incorrect", -0.8},
    {"unclear", -0.5},      {"confusing", -0.6},    {"weak", -0.6},         {"flawed", -0.8},
    {"trivial", -0.6},      {"incremental", -0.4},  {"missing", -0.4},      {"lacks", -0.5},
    {"lacking", -0.5},      {"insufficient", -0.6}, {"unconvincing", -0.7}, {"sloppy", -0.8},
    {"misleading", -0.8},   {"doubtful", -0.5},     {"questionable", -0.6}, {"problematic", -0.6},
    {"error", -0.5},        {"errors", -0.5},       {"mistake", -0.6},      {"mistakes", -0.6},
    {"reject", -0.8},       {"rejection", -0.7},    {"unfortunately", -0.5},{"not", -0.3},
    {"hard", -0.3},         {"difficult", -0.3},    {"vague", -0.5},        {"superficial", -0.6},
    {"disappointing", -0.8},{"inadequate", -0.7},   {"obscure", -0.5},      {"redundant", -0.4},
};

constexpr std::pair<const char*, Emotion> kEmotions[] = {
    {"good", Emotion::positive},          {"excellent", Emotion::positive},
    {"nice", Emotion::positive},          {"great", Emotion::positive},
    {"valuable", Emotion::positive},      {"strong", Emotion::positive},
    {"impressive", Emotion::positive},    {"elegant", Emotion::positive},
    {"hope", Emotion::optimism},          {"promising", Emotion::optimism},
    {"potential", Emotion::optimism},     {"future", Emotion::optimism},
    {"improve", Emotion::optimism},       {"confident", Emotion::optimism},
    {"encourage", Emotion::optimism},     {"opportunity", Emotion::optimism},
    {"enjoyed", Emotion::cheerfulness},   {"happy", Emotion::cheerfulness},
    {"pleasure", Emotion::cheerfulness},  {"delighted", Emotion::cheerfulness},
    {"glad", Emotion::cheerfulness},      {"fun", Emotion::cheerfulness},
    {"unclear", Emotion::confusion},      {"confusing", Emotion::confusion},
    {"puzzling", Emotion::confusion},     {"vague", Emotion::confusion},
    {"obscure", Emotion::confusion},      {"ambiguous", Emotion::confusion},
    {"confused", Emotion::confusion},     {"understand", Emotion::confusion},
    {"satisfied", Emotion::contentment},  {"pleased", Emotion::contentment},
    {"complete", Emotion::contentment},   {"comfortable", Emotion::contentment},
    {"fine", Emotion::contentment},       {"adequate", Emotion::contentment},
    {"convincing", Emotion::contentment}, {"settled", Emotion::contentment},
};

constexpr const char* kStopwords[] = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
    "an",      "and",     "any",    "are",     "as",     "at",      "be",      "because",
    "been",    "before",  "being",  "below",   "between","both",    "but",     "by",
    "can",     "could",   "did",    "do",      "does",   "doing",   "down",    "during",
    "each",    "few",     "for",    "from",    "further","had",     "has",     "have",
    "having",  "he",      "her",    "here",    "hers",   "herself", "him",     "himself",
    "his",     "how",     "i",      "if",      "in",     "into",    "is",      "it",
    "its",     "itself",  "just",   "me",      "more",   "most",    "my",      "myself",
    "no",      "nor",     "now",    "of",      "off",    "on",      "once",    "only",
    "or",      "other",   "our",    "ours",    "ourselves","out",   "over",    "own",
    "same",    "she",     "should", "so",      "some",   "such",    "than",    "that",
    "the",     "their",   "theirs", "them",    "themselves","then", "there",   "these",
    "they",    "this",    "those",  "through", "to",     "too",     "under",   "until",
    "up",      "very",    "was",    "we",      "were",   "what",    "when",    "where",
    "which",   "while",   "who",    "whom",    "why",    "will",    "with",    "would",
    "you",     "your",    "yours",  "yourself","yourselves",
};

}  // namespace

const SentimentLexicon& default_sentiment_lexicon() {
  static const SentimentLexicon lexicon = [] {
    SentimentLexicon lex;
    lex.name = "peerscope-default";
    for (const auto& [token, value] : kPolarity) lex.polarity.emplace(token, value);
    return lex;
  }();
  return lexicon;
}

const EmotionLexicons& default_emotion_lexicons() {
  static const EmotionLexicons lexicons = [] {
    EmotionLexicons lex;
    for (const auto& [token, emotion] : kEmotions) {
      lex.words[static_cast<std::size_t>(emotion)].insert(token);
    }
    return lex;
  }();
  return lexicons;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

}  // namespace peerscope
