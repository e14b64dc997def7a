#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "peerscope/corpus.hpp"
#include "peerscope/csv.hpp"
#include "peerscope/error.hpp"

namespace peerscope {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string> kJsonKeys = {
    "paper_id",       "title",           "author_ids",   "topics",        "submission_year",
    "decision",       "citation_count",  "cited_paper_ids", "review_rounds"};

const std::set<std::string> kRoundKeys = {"round_index", "editor_id", "reviewer_ids",
                                          "review_texts"};

Decision parse_decision(std::string_view s, const std::string& file, std::size_t line) {
  if (s == "accepted") return Decision::accepted;
  if (s == "rejected") return Decision::rejected;
  throw ValidationError(file, line, "decision",
                        "expected 'accepted' or 'rejected', got '" + std::string(s) + "'");
}

template <typename Int>
Int parse_int(std::string_view s, const std::string& file, std::size_t line, const char* field) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError(file, line, field, "not an integer: '" + std::string(s) + "'");
  }
  return value;
}

class JsonLine {
 public:
  JsonLine(const json& obj, const std::string& file, std::size_t line)
      : obj_(obj), file_(file), line_(line) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ValidationError(file_, line_, field, msg);
  }

  const json& at(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing key");
    return *it;
  }

  std::string str(const json& v, const char* field) const {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

  std::int64_t integer(const json& v, const char* field) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::vector<std::string> strings(const json& v, const char* field) const {
    if (!v.is_array()) fail(field, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(str(e, field));
    return out;
  }

 private:
  const json& obj_;
  const std::string& file_;
  std::size_t line_;
};

PaperRecord parse_json_record(const std::string& text, const std::string& file,
                              std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(file, line, "", std::string("malformed JSON: ") + e.what());
  }
  JsonLine j(obj, file, line);
  if (!obj.is_object()) j.fail("", "expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!kJsonKeys.contains(key)) j.fail(key, "unknown key");
  }

  PaperRecord p;
  p.paper_id = j.str(j.at(obj, "paper_id"), "paper_id");
  p.title = j.str(j.at(obj, "title"), "title");
  p.author_ids = j.strings(j.at(obj, "author_ids"), "author_ids");
  for (auto& t : j.strings(j.at(obj, "topics"), "topics")) p.topics.insert(std::move(t));
  p.submission_year = static_cast<int>(j.integer(j.at(obj, "submission_year"), "submission_year"));
  p.decision = parse_decision(j.str(j.at(obj, "decision"), "decision"), file, line);
  if (auto it = obj.find("citation_count"); it != obj.end() && !it->is_null()) {
    p.citation_count = j.integer(*it, "citation_count");
  }
  for (auto& c : j.strings(j.at(obj, "cited_paper_ids"), "cited_paper_ids")) {
    p.cited_paper_ids.insert(std::move(c));
  }
  const json& rounds = j.at(obj, "review_rounds");
  if (!rounds.is_array()) j.fail("review_rounds", "expected an array");
  for (const auto& r : rounds) {
    if (!r.is_object()) j.fail("review_rounds", "expected an array of objects");
    for (const auto& [key, _] : r.items()) {
      if (!kRoundKeys.contains(key)) j.fail("review_rounds." + key, "unknown key");
    }
    ReviewRound round;
    round.round_index = static_cast<int>(j.integer(j.at(r, "round_index"), "round_index"));
    round.editor_id = j.str(j.at(r, "editor_id"), "editor_id");
    round.reviewer_ids = j.strings(j.at(r, "reviewer_ids"), "reviewer_ids");
    round.review_texts = j.strings(j.at(r, "review_texts"), "review_texts");
    p.review_rounds.push_back(std::move(round));
  }
  validate_record(p, file, line);
  return p;
}

ordered_json to_json(const PaperRecord& p) {
  ordered_json o;
  o["paper_id"] = p.paper_id;
  o["title"] = p.title;
  o["author_ids"] = p.author_ids;
  o["topics"] = std::vector<std::string>(p.topics.begin(), p.topics.end());
  o["submission_year"] = p.submission_year;
  o["decision"] = std::string(to_string(p.decision));
  o["citation_count"] = p.citation_count;
  o["cited_paper_ids"] = std::vector<std::string>(p.cited_paper_ids.begin(), p.cited_paper_ids.end());
  ordered_json rounds = ordered_json::array();
  for (const auto& r : p.review_rounds) {
    ordered_json jr;
    jr["round_index"] = r.round_index;
    jr["editor_id"] = r.editor_id;
    jr["reviewer_ids"] = r.reviewer_ids;
    jr["review_texts"] = r.review_texts;
    rounds.push_back(std::move(jr));
  }
  o["review_rounds"] = std::move(rounds);
  return o;
}

const std::vector<std::string> kPapersHeader = {"paper_id",       "title",      "submission_year",
                                                "decision",       "citation_count", "author_ids",
                                                "topics"};
const std::vector<std::string> kReviewsHeader = {"paper_id", "round_index", "editor_id",
                                                 "reviewer_id", "review_text"};
const std::vector<std::string> kCitationsHeader = {"citing_paper_id", "cited_paper_id"};

void expect_width(const csv::Row& row, std::size_t width, const std::string& file) {
  if (row.fields.size() != width) {
    throw ValidationError(file, row.line, "",
                          "expected " + std::to_string(width) + " columns, got " +
                              std::to_string(row.fields.size()));
  }
}

}  // namespace

Corpus read_jsonl(std::istream& in, const std::string& name) {
  std::vector<PaperRecord> papers;
  std::map<std::string, std::size_t> first_line;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    auto p = parse_json_record(text, name, line);
    if (auto [it, fresh] = first_line.emplace(p.paper_id, line); !fresh) {
      throw ValidationError(name, line, "paper_id",
                            "duplicate paper_id '" + p.paper_id + "' (first seen on line " +
                                std::to_string(it->second) + ")");
    }
    papers.push_back(std::move(p));
  }
  return Corpus::from_papers(std::move(papers), name);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& p : corpus.papers()) out << to_json(p).dump() << '\n';
}

Corpus read_csv_bundle(CsvBundleStreams in, const std::string& name) {
  const std::string papers_file = name + "/papers.csv";
  const std::string reviews_file = name + "/reviews.csv";
  const std::string citations_file = name + "/citations.csv";

  std::vector<PaperRecord> papers;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::size_t> lines;
  {
    csv::Reader reader(in.papers, papers_file);
    reader.expect_header(kPapersHeader);
    csv::Row row;
    while (reader.next(row)) {
      expect_width(row, kPapersHeader.size(), papers_file);
      const auto& f = row.fields;
      PaperRecord p;
      p.paper_id = f[0];
      p.title = f[1];
      p.submission_year = parse_int<int>(f[2], papers_file, row.line, "submission_year");
      p.decision = parse_decision(f[3], papers_file, row.line);
      if (!f[4].empty()) {
        p.citation_count = parse_int<std::int64_t>(f[4], papers_file, row.line, "citation_count");
      }
      p.author_ids = csv::split(f[5], ';');
      for (auto& t : csv::split(f[6], ';')) p.topics.insert(std::move(t));
      if (!index.emplace(p.paper_id, papers.size()).second) {
        throw ValidationError(papers_file, row.line, "paper_id",
                              "duplicate paper_id '" + p.paper_id + "'");
      }
      papers.push_back(std::move(p));
      lines.push_back(row.line);
    }
  }

  auto lookup = [&](const std::string& id, const std::string& file, std::size_t line,
                    const char* field) -> PaperRecord& {
    auto it = index.find(id);
    if (it == index.end()) {
      throw ValidationError(file, line, field, "unknown paper_id '" + id + "'");
    }
    return papers[it->second];
  };

  {
    // (paper, round) -> round under construction
    std::map<std::pair<std::size_t, int>, ReviewRound> rounds;
    csv::Reader reader(in.reviews, reviews_file);
    reader.expect_header(kReviewsHeader);
    csv::Row row;
    while (reader.next(row)) {
      expect_width(row, kReviewsHeader.size(), reviews_file);
      const auto& f = row.fields;
      auto& paper = lookup(f[0], reviews_file, row.line, "paper_id");
      int round_index = parse_int<int>(f[1], reviews_file, row.line, "round_index");
      auto key = std::make_pair(index.at(paper.paper_id), round_index);
      auto [it, fresh] = rounds.try_emplace(key);
      auto& round = it->second;
      if (fresh) {
        round.round_index = round_index;
        round.editor_id = f[2];
      } else if (round.editor_id != f[2]) {
        throw ValidationError(reviews_file, row.line, "editor_id",
                              "paper '" + paper.paper_id + "' round " + std::to_string(round_index) +
                                  " has conflicting editor ids");
      }
      // An empty reviewer_id marks a round that has an editor but no reviews.
      if (!f[3].empty()) {
        round.reviewer_ids.push_back(f[3]);
        round.review_texts.push_back(f[4]);
      }
    }
    for (auto& [key, round] : rounds) papers[key.first].review_rounds.push_back(std::move(round));
  }

  {
    csv::Reader reader(in.citations, citations_file);
    reader.expect_header(kCitationsHeader);
    csv::Row row;
    while (reader.next(row)) {
      expect_width(row, kCitationsHeader.size(), citations_file);
      auto& paper = lookup(row.fields[0], citations_file, row.line, "citing_paper_id");
      paper.cited_paper_ids.insert(row.fields[1]);
    }
  }

  for (std::size_t i = 0; i < papers.size(); ++i) validate_record(papers[i], papers_file, lines[i]);
  return Corpus::from_papers(std::move(papers), name);
}

void write_csv_bundle(const Corpus& corpus, std::ostream& papers, std::ostream& reviews,
                      std::ostream& citations) {
  csv::write_row(papers, kPapersHeader);
  csv::write_row(reviews, kReviewsHeader);
  csv::write_row(citations, kCitationsHeader);
  for (const auto& p : corpus.papers()) {
    csv::write_row(papers, {p.paper_id, p.title, std::to_string(p.submission_year),
                            std::string(to_string(p.decision)), std::to_string(p.citation_count),
                            csv::join(p.author_ids, ';'),
                            csv::join(std::vector<std::string>(p.topics.begin(), p.topics.end()), ';')});
    for (const auto& r : p.review_rounds) {
      const auto idx = std::to_string(r.round_index);
      if (r.reviewer_ids.empty()) csv::write_row(reviews, {p.paper_id, idx, r.editor_id, "", ""});
      for (std::size_t k = 0; k < r.reviewer_ids.size(); ++k) {
        csv::write_row(reviews, {p.paper_id, idx, r.editor_id, r.reviewer_ids[k], r.review_texts[k]});
      }
    }
    for (const auto& c : p.cited_paper_ids) csv::write_row(citations, {p.paper_id, c});
  }
}

void write_csv_bundle(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream papers(dir / "papers.csv", std::ios::binary);
  std::ofstream reviews(dir / "reviews.csv", std::ios::binary);
  std::ofstream citations(dir / "citations.csv", std::ios::binary);
  if (!papers || !reviews || !citations) {
    throw Error("cannot write CSV bundle to " + dir.string());
  }
  write_csv_bundle(corpus, papers, reviews, citations);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, LoadReport* report) {
  namespace fs = std::filesystem;
  auto open = [](const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open " + file.string());
    return in;
  };
  if (!fs::exists(path)) throw Error("input does not exist: " + path.string());

  auto corpus = [&] {
    if (format == CorpusFormat::jsonl) {
      auto in = open(path);
      return read_jsonl(in, path.string());
    }
    auto papers = open(path / "papers.csv");
    auto reviews = open(path / "reviews.csv");
    auto citations = open(path / "citations.csv");
    return read_csv_bundle({papers, reviews, citations}, path.string());
  }();

  if (report) {
    report->papers = corpus.size();
    report->authors = corpus.authors().size();
    report->flagged = corpus.unresolved_citations().size();
  }
  return corpus;
}

}  // namespace peerscope
