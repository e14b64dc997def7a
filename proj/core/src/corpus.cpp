#include "peerscope/corpus.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "peerscope/audit.hpp"
#include "peerscope/error.hpp"

namespace peerscope {

ValidationError::ValidationError(std::string file, std::size_t line, std::string field,
                                 const std::string& message)
    : Error([&] {
        std::string where = file.empty() ? std::string("corpus") : file;
        if (line) where += ":" + std::to_string(line);
        if (!field.empty()) where += ": field '" + field + "'";
        return where + ": " + message;
      }()),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

std::string_view to_string(Decision d) noexcept {
  return d == Decision::accepted ? "accepted" : "rejected";
}

void validate_record(const PaperRecord& p, std::string_view file, std::size_t line) {
  auto fail = [&](const char* field, const std::string& msg) {
    throw ValidationError(std::string(file), line, field,
                          "paper '" + p.paper_id + "': " + msg);
  };
  if (p.paper_id.empty()) fail("paper_id", "empty paper id");
  if (p.author_ids.empty()) fail("author_ids", "author list is empty");
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& a : p.author_ids) {
      if (a.empty()) fail("author_ids", "empty author id");
      if (!seen.insert(a).second) fail("author_ids", "duplicate author '" + a + "'");
    }
  }
  if (p.citation_count < 0) fail("citation_count", "negative citation count");
  if (p.cited_paper_ids.contains(p.paper_id)) fail("cited_paper_ids", "paper cites itself");
  int previous = 0;
  for (const auto& r : p.review_rounds) {
    if (r.round_index <= 0) fail("review_rounds", "round_index must be positive");
    if (r.round_index <= previous) fail("review_rounds", "round_index not strictly increasing");
    previous = r.round_index;
    if (r.reviewer_ids.size() != r.review_texts.size()) {
      fail("review_texts", "round " + std::to_string(r.round_index) + " has " +
                               std::to_string(r.reviewer_ids.size()) + " reviewer ids but " +
                               std::to_string(r.review_texts.size()) + " review texts");
    }
  }
}

Corpus Corpus::from_papers(std::vector<PaperRecord> papers, std::string source) {
  if (papers.empty()) throw ValidationError(source, 0, "", "corpus is empty");
  Corpus c;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    validate_record(papers[i], source);
    if (!c.by_id_.emplace(papers[i].paper_id, i).second) {
      throw ValidationError(source, 0, "paper_id",
                            "duplicate paper_id '" + papers[i].paper_id + "'");
    }
  }
  c.papers_ = std::move(papers);
  c.build_indexes();
  return c;
}

void Corpus::build_indexes() {
  first_year_ = std::numeric_limits<int>::max();
  last_year_ = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    const auto& p = papers_[i];
    for (const auto& a : p.author_ids) by_author_[a].push_back(i);
    by_year_[p.submission_year].push_back(i);
    first_year_ = std::min(first_year_, p.submission_year);
    last_year_ = std::max(last_year_, p.submission_year);
    for (const auto& cited : p.cited_paper_ids) {
      if (by_id_.contains(cited)) {
        citing_[cited].push_back(i);
      } else {
        unresolved_.push_back({p.paper_id, cited});
      }
    }
  }
  authors_.reserve(by_author_.size());
  for (const auto& [author, _] : by_author_) authors_.push_back(author);
}

PaperRefs Corpus::refs(const std::vector<std::size_t>& indexes) const {
  PaperRefs out;
  out.reserve(indexes.size());
  for (auto i : indexes) {
    audit::note_read(papers_[i]);
    out.push_back(&papers_[i]);
  }
  return out;
}

const std::vector<PaperRecord>& Corpus::papers() const {
  if (audit::enabled()) {
    for (const auto& p : papers_) audit::note_read(p);
  }
  return papers_;
}

const PaperRecord& Corpus::paper(std::size_t index) const {
  const auto& p = papers_.at(index);
  audit::note_read(p);
  return p;
}

const PaperRecord* Corpus::find(std::string_view paper_id) const {
  auto it = by_id_.find(paper_id);
  if (it == by_id_.end()) return nullptr;
  audit::note_read(papers_[it->second]);
  return &papers_[it->second];
}

bool Corpus::has_author(std::string_view author) const { return by_author_.contains(author); }

PaperRefs Corpus::papers_of(std::string_view author) const {
  auto it = by_author_.find(author);
  if (it == by_author_.end()) throw Error("unknown author '" + std::string(author) + "'");
  return refs(it->second);
}

PaperRefs Corpus::papers_in_year(int year) const {
  auto it = by_year_.find(year);
  return it == by_year_.end() ? PaperRefs{} : refs(it->second);
}

PaperRefs Corpus::citing_papers(std::string_view paper_id) const {
  auto it = citing_.find(paper_id);
  return it == citing_.end() ? PaperRefs{} : refs(it->second);
}

SubmissionCounts author_year_submissions(const Corpus& corpus, std::string_view author,
                                         int year) {
  SubmissionCounts counts;
  for (const auto* p : corpus.papers_of(author)) {
    if (p->submission_year != year) continue;
    ++counts.submitted;
    if (p->accepted()) ++counts.accepted;
  }
  return counts;
}

}  // namespace peerscope
