#include "peerscope/report.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "peerscope/category.hpp"
#include "peerscope/csv.hpp"
#include "peerscope/error.hpp"
#include "peerscope/format.hpp"

namespace fs = std::filesystem;

namespace peerscope {
namespace {

using Row = std::vector<std::string>;

/// A CSV produced by an earlier stage, addressable by column name.
class Table {
 public:
  Table(const fs::path& dir, const std::string& file, const std::string& stage) {
    const fs::path path = dir / file;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("report needs the '" + stage + "' stage output " + file +
                  "; run `peerscope " + stage + "` first");
    }
    csv::Reader reader(in, path.string());
    csv::Row row;
    if (!reader.next(row)) throw Error(path.string() + " is empty; rerun the '" + stage + "' stage");
    header_ = row.fields;
    while (reader.next(row)) rows_.push_back(row.fields);
  }

  const std::vector<Row>& rows() const { return rows_; }

  const std::string& get(const Row& row, const std::string& column) const {
    auto it = std::find(header_.begin(), header_.end(), column);
    if (it == header_.end()) throw Error("column '" + column + "' missing from stage output");
    return row.at(static_cast<std::size_t>(it - header_.begin()));
  }

  Row pick(const Row& row, const std::vector<std::string>& columns) const {
    Row out;
    for (const auto& c : columns) out.push_back(get(row, c));
    return out;
  }

 private:
  Row header_;
  std::vector<Row> rows_;
};

double value(const std::string& s) { return s.empty() ? 0.0 : std::stod(s); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

struct Panel {
  std::string title;
  std::vector<std::string> groups;               // x axis
  std::vector<std::string> series;               // one bar per series within a group
  std::vector<std::vector<double>> values;       // [group][series]
};

/// Grouped bar charts laid out side by side, each with its own scale.
std::string bar_chart(const std::string& title, const std::vector<Panel>& panels) {
  const int pw = 260, ph = 220, top = 50, left = 40, gap = 30;
  const int width = left + static_cast<int>(panels.size()) * (pw + gap);
  const int height = top + ph + 80;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << left << "\" y=\"22\" font-size=\"15\">" << xml_escape(title) << "</text>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const int x0 = left + static_cast<int>(p) * (pw + gap);
    double hi = 0.0, lo = 0.0;
    for (const auto& g : panel.values) {
      for (double v : g) {
        hi = std::max(hi, v);
        lo = std::min(lo, v);
      }
    }
    if (hi - lo <= 0.0) hi = lo + 1.0;
    auto y_of = [&](double v) { return top + ph - (v - lo) / (hi - lo) * ph; };
    svg << "<text x=\"" << x0 << "\" y=\"" << top - 8 << "\" font-size=\"12\">" << xml_escape(panel.title)
        << "</text>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << format_fixed(y_of(0.0), 2) << "\" x2=\"" << x0 + pw
        << "\" y2=\"" << format_fixed(y_of(0.0), 2) << "\" stroke=\"black\"/>\n";
    const double slot = static_cast<double>(pw) / static_cast<double>(std::max<std::size_t>(1, panel.groups.size()));
    const double bar = slot * 0.8 / static_cast<double>(std::max<std::size_t>(1, panel.series.size()));
    for (std::size_t g = 0; g < panel.groups.size(); ++g) {
      const double gx = x0 + slot * static_cast<double>(g) + slot * 0.1;
      for (std::size_t s = 0; s < panel.series.size(); ++s) {
        const double v = panel.values[g][s];
        const double y = std::min(y_of(v), y_of(0.0));
        const double h = std::abs(y_of(v) - y_of(0.0));
        svg << "<rect x=\"" << format_fixed(gx + bar * static_cast<double>(s), 2) << "\" y=\""
            << format_fixed(y, 2) << "\" width=\"" << format_fixed(bar * 0.95, 2) << "\" height=\""
            << format_fixed(h, 2) << "\" fill=\"" << kPalette[s % std::size(kPalette)] << "\"><title>"
            << xml_escape(panel.groups[g] + " " + panel.series[s] + " " + format_fixed(v, 4))
            << "</title></rect>\n";
      }
      svg << "<text x=\"" << format_fixed(gx + slot * 0.4, 2) << "\" y=\"" << top + ph + 16
          << "\" text-anchor=\"middle\">" << xml_escape(panel.groups[g]) << "</text>\n";
    }
    svg << "<text x=\"" << x0 << "\" y=\"" << top + ph + 34 << "\" fill=\"gray\">max "
        << format_fixed(hi, 4) << "</text>\n";
    if (panel.series.size() > 1 && p == 0) {
      for (std::size_t s = 0; s < panel.series.size(); ++s) {
        const int lx = x0 + static_cast<int>(s) * 80;
        svg << "<rect x=\"" << lx << "\" y=\"" << top + ph + 48 << "\" width=\"10\" height=\"10\" fill=\""
            << kPalette[s % std::size(kPalette)] << "\"/><text x=\"" << lx + 14 << "\" y=\"" << top + ph + 57
            << "\">" << xml_escape(panel.series[s]) << "</text>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_ / "report"); }

  void table(const std::string& name, const Row& header, const std::vector<Row>& rows) {
    std::ostringstream out;
    csv::write_row(out, header);
    for (const auto& r : rows) csv::write_row(out, r);
    file(name, out.str());
  }

  void file(const std::string& name, const std::string& content) {
    const fs::path rel = fs::path("report") / name;
    std::ofstream out(dir_ / rel, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir_ / rel).string());
    out << content;
    written_.push_back(rel);
  }

  std::vector<fs::path> written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

std::vector<std::string> category_names() {
  std::vector<std::string> out;
  for (auto c : kAllCategories) out.emplace_back(to_string(c));
  return out;
}

}  // namespace

std::vector<fs::path> write_report(const fs::path& dir) {
  // Load everything first so a missing stage fails before anything is written.
  const Table stats(dir, "category_stats.csv", "categorize");
  const Table profile(dir, "profile_summary.csv", "features");
  const Table review(dir, "review_summary.csv", "features");
  const Table means(dir, "centrality_means.csv", "metrics");
  const Table shells(dir, "shell_occupancy.csv", "metrics");
  const Table mixed(dir, "mixed_team.csv", "crosscat");
  const Table overlap(dir, "overlap_report.csv", "crosscat");
  nlohmann::json eval;
  {
    std::ifstream in(dir / "eval_report.json");
    if (!in) throw Error("report needs the 'predict' stage output eval_report.json; run `peerscope predict` first");
    eval = nlohmann::json::parse(in);
  }
  const Table importances(dir, "importances.csv", "predict");

  Writer w(dir);
  const auto cats = category_names();

  std::vector<Row> rows;
  for (const auto& r : stats.rows()) rows.push_back(stats.pick(r, {"category", "authors"}));
  w.table("table1_categories.csv", {"category", "authors"}, rows);

  rows.clear();
  Panel decisions{"papers (%)", {}, {"accepted", "rejected"}, {}};
  for (const auto& r : stats.rows()) {
    rows.push_back(stats.pick(r, {"category", "papers", "accepted", "rejected", "pct_accepted", "pct_rejected"}));
    decisions.groups.push_back(stats.get(r, "category"));
    decisions.values.push_back({value(stats.get(r, "pct_accepted")), value(stats.get(r, "pct_rejected"))});
  }
  w.table("fig2_paper_decisions.csv",
          {"category", "papers", "accepted", "rejected", "pct_accepted", "pct_rejected"}, rows);
  w.file("fig2_paper_decisions.svg", bar_chart("Accepted and rejected papers by category", {decisions}));

  auto per_category_panels = [&](const Table& t, const std::vector<std::string>& columns) {
    std::vector<Panel> panels;
    for (const auto& col : columns) {
      Panel p{col, {}, {"mean"}, {}};
      for (const auto& r : t.rows()) {
        p.groups.push_back(t.get(r, "category"));
        p.values.push_back({value(t.get(r, col))});
      }
      panels.push_back(std::move(p));
    }
    return panels;
  };

  const std::vector<std::string> profile_cols = {"mean_experience", "mean_h_index", "mean_team_size",
                                                 "citation_index", "topic_diversity"};
  rows.clear();
  for (const auto& r : profile.rows()) {
    Row row = {profile.get(r, "category")};
    for (const auto& c : profile_cols) row.push_back(profile.get(r, c));
    rows.push_back(std::move(row));
  }
  Row header = {"category"};
  header.insert(header.end(), profile_cols.begin(), profile_cols.end());
  w.table("fig4_author_profile.csv", header, rows);
  w.file("fig4_author_profile.svg", bar_chart("Author profile features", per_category_panels(profile, profile_cols)));

  const std::vector<std::string> review_cols = {"mean_sentiment", "mean_length", "reviewer_diversity",
                                                "editor_diversity"};
  rows.clear();
  for (const auto& r : review.rows()) {
    Row row = {review.get(r, "category")};
    for (const auto& c : review_cols) row.push_back(review.get(r, c));
    rows.push_back(std::move(row));
  }
  header = {"category"};
  header.insert(header.end(), review_cols.begin(), review_cols.end());
  w.table("fig5_review_features.csv", header, rows);
  w.file("fig5_review_features.svg", bar_chart("Review features", per_category_panels(review, review_cols)));

  rows.clear();
  std::map<std::string, Panel> by_kind;
  std::vector<std::string> kind_order;
  for (const auto& r : means.rows()) {
    rows.push_back(means.pick(r, {"graph", "kind", "High", "Mid", "Low"}));
    const auto& kind = means.get(r, "kind");
    if (!by_kind.contains(kind)) {
      by_kind[kind] = Panel{kind, {}, cats, {}};
      kind_order.push_back(kind);
    }
    auto& p = by_kind[kind];
    p.groups.push_back(means.get(r, "graph"));
    p.values.push_back({value(means.get(r, "High")), value(means.get(r, "Mid")), value(means.get(r, "Low"))});
  }
  w.table("fig6_7_centrality.csv", {"graph", "kind", "High", "Mid", "Low"}, rows);
  std::vector<Panel> centrality_panels;
  for (const auto& k : kind_order) centrality_panels.push_back(by_kind[k]);
  w.file("fig6_7_centrality.svg", bar_chart("Mean centrality by category", centrality_panels));

  rows.clear();
  for (const auto& r : shells.rows()) {
    rows.push_back(shells.pick(r, {"shell", "k", "authors", "pct_High", "pct_Mid", "pct_Low"}));
  }
  w.table("table2_core_periphery.csv", {"shell", "k", "authors", "pct_High", "pct_Mid", "pct_Low"}, rows);

  rows.clear();
  for (const auto& r : mixed.rows()) {
    rows.push_back(mixed.pick(r, {"table", "feature", "collaborated", "not_collaborated"}));
  }
  w.table("table3_4_mixed_team.csv", {"table", "feature", "collaborated", "not_collaborated"}, rows);

  rows.clear();
  auto metric = [](const nlohmann::json& v) {
    return v.is_null() ? std::string() : format_fixed(v.get<double>(), 6);
  };
  for (const auto& [key, name] : {std::pair{"gbt", "gbt"}, std::pair{"random_forest", "random_forest"}}) {
    const auto& m = eval.at(key);
    for (const std::string stat : {"precision", "recall", "f1"}) {
      Row row = {name, "per_class", stat};
      for (const auto& c : cats) row.push_back(metric(m.at("per_class").at(c).at(stat)));
      rows.push_back(std::move(row));
    }
    for (std::size_t t = 0; t < cats.size(); ++t) {
      Row row = {name, "confusion", "true_" + cats[t]};
      for (std::size_t p = 0; p < cats.size(); ++p) {
        row.push_back(std::to_string(m.at("confusion").at(t).at(p).get<std::size_t>()));
      }
      rows.push_back(std::move(row));
    }
    rows.push_back({name, "summary", "accuracy", metric(m.at("accuracy")), "", ""});
    rows.push_back({name, "summary", "macro_f1", metric(m.at("macro_f1")), "", ""});
  }
  w.table("table5_8_classifier.csv", {"model", "block", "row", "High", "Mid", "Low"}, rows);

  Panel imp{"random forest", {}, {"score"}, {}};
  for (const auto& r : importances.rows()) {
    if (imp.groups.size() == 10) break;
    imp.groups.push_back(importances.get(r, "feature"));
    imp.values.push_back({value(importances.get(r, "score"))});
  }
  // Long feature names need room; one panel per feature keeps labels legible.
  std::vector<Panel> imp_panels;
  for (std::size_t i = 0; i < imp.groups.size(); ++i) {
    imp_panels.push_back(Panel{imp.groups[i], {""}, {"score"}, {imp.values[i]}});
  }
  w.file("importances.svg", bar_chart("Top random forest feature importances", imp_panels));

  rows.clear();
  std::map<std::string, Row> table9;
  std::vector<std::string> order;
  for (const auto& r : overlap.rows()) {
    const auto& filter = overlap.get(r, "filter");
    if (filter == "all") continue;
    const auto& label = overlap.get(r, "category");
    const std::string key = label + "|" + filter;
    if (!table9.contains(key)) {
      table9[key] = {label, filter, "", "", "", ""};
      order.push_back(key);
    }
    const std::size_t base = overlap.get(r, "role") == "editor" ? 2 : 4;
    table9[key][base] = overlap.get(r, "pct_J_06_1");
    table9[key][base + 1] = overlap.get(r, "pct_J_eq_1");
  }
  for (const auto& k : order) rows.push_back(table9[k]);
  w.table("table9_jaccard_overlap.csv",
          {"category", "filter", "editor_pct_J_06_1", "editor_pct_J_eq_1", "reviewer_pct_J_06_1",
           "reviewer_pct_J_eq_1"},
          rows);

  return w.written();
}

}  // namespace peerscope
