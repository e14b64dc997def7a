#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace peerscope {

enum class Decision { accepted, rejected };

std::string_view to_string(Decision d) noexcept;

struct ReviewRound {
  int round_index = 1;
  std::string editor_id;
  std::vector<std::string> reviewer_ids;
  std::vector<std::string> review_texts;  // aligned with reviewer_ids

  bool operator==(const ReviewRound&) const = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::vector<std::string> author_ids;
  std::set<std::string> topics;
  int submission_year = 0;
  Decision decision = Decision::rejected;
  std::int64_t citation_count = 0;
  std::set<std::string> cited_paper_ids;
  std::vector<ReviewRound> review_rounds;

  bool accepted() const noexcept { return decision == Decision::accepted; }
  bool operator==(const PaperRecord&) const = default;
};

using PaperRefs = std::vector<const PaperRecord*>;

/// Checks the per-record invariants; throws ValidationError naming the
/// paper and the offending field.
void validate_record(const PaperRecord& paper, std::string_view file = {},
                     std::size_t line = 0);

struct SubmissionCounts {
  int submitted = 0;
  int accepted = 0;
  bool operator==(const SubmissionCounts&) const = default;
};

struct UnresolvedCitation {
  std::string citing_paper_id;
  std::string cited_paper_id;
};

/// Immutable, validated paper collection with author/year/citation indexes.
/// Papers keep their input order.
class Corpus {
 public:
  /// Validates every record and builds all indexes. Throws ValidationError
  /// on duplicate ids or invariant violations and on an empty input.
  static Corpus from_papers(std::vector<PaperRecord> papers, std::string source = "<memory>");

  std::size_t size() const noexcept { return papers_.size(); }

  /// All records, in input order.
  const std::vector<PaperRecord>& papers() const;
  const PaperRecord& paper(std::size_t index) const;
  /// nullptr when the id is not in the corpus.
  const PaperRecord* find(std::string_view paper_id) const;

  /// Sorted, distinct author ids.
  const std::vector<std::string>& authors() const noexcept { return authors_; }
  bool has_author(std::string_view author) const;

  /// Papers listing `author`, in corpus order. Throws Error for an unknown author.
  PaperRefs papers_of(std::string_view author) const;
  PaperRefs papers_in_year(int year) const;
  /// In-corpus papers whose cited_paper_ids contains `paper_id`.
  PaperRefs citing_papers(std::string_view paper_id) const;

  const std::vector<UnresolvedCitation>& unresolved_citations() const noexcept {
    return unresolved_;
  }

  int first_year() const noexcept { return first_year_; }
  int last_year() const noexcept { return last_year_; }

 private:
  Corpus() = default;
  void build_indexes();
  PaperRefs refs(const std::vector<std::size_t>& indexes) const;

  std::vector<PaperRecord> papers_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::vector<std::string> authors_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_author_;
  std::map<int, std::vector<std::size_t>> by_year_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> citing_;
  std::vector<UnresolvedCitation> unresolved_;
  int first_year_ = 0;
  int last_year_ = 0;
};

/// Submitted/accepted counts of `author` restricted to `year`.
/// Throws Error for an unknown author.
SubmissionCounts author_year_submissions(const Corpus& corpus, std::string_view author, int year);

// ---- file formats ---------------------------------------------------------

enum class CorpusFormat { jsonl, csv_bundle };

struct LoadReport {
  std::size_t papers = 0;
  std::size_t authors = 0;
  std::size_t flagged = 0;  // unresolvable citation targets
};

/// `path` is a .jsonl file for jsonl, or a directory holding papers.csv,
/// reviews.csv and citations.csv for csv_bundle.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   LoadReport* report = nullptr);

Corpus read_jsonl(std::istream& in, const std::string& name = "<stream>");
void write_jsonl(const Corpus& corpus, std::ostream& out);

struct CsvBundleStreams {
  std::istream& papers;
  std::istream& reviews;
  std::istream& citations;
};
Corpus read_csv_bundle(CsvBundleStreams in, const std::string& name = "<bundle>");
void write_csv_bundle(const Corpus& corpus, const std::filesystem::path& dir);
void write_csv_bundle(const Corpus& corpus, std::ostream& papers, std::ostream& reviews,
                      std::ostream& citations);

}  // namespace peerscope
