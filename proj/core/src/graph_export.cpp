#include <ostream>

#include "peerscope/csv.hpp"
#include "peerscope/graph.hpp"
#include "peerscope/netbuild.hpp"

namespace peerscope {
namespace {

std::string label_text(std::optional<Category> c) {
  return c ? std::string(to_string(*c)) : std::string();
}

const char* colour(std::optional<Category> c) {
  if (!c) return "gray";
  switch (*c) {
    case Category::High: return "blue";
    case Category::Mid: return "red";
    case Category::Low: return "yellow";
  }
  return "gray";
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

void write_nodes_csv(const AuthorGraph& g, std::ostream& out) {
  csv::write_row(out, {"id", "category"});
  for (std::size_t v = 0; v < g.node_count(); ++v) csv::write_row(out, {g.id(v), label_text(g.label(v))});
}

void write_edges_csv(const AuthorGraph& g, std::ostream& out) {
  csv::write_row(out, {"src", "dst", "weight", "directed"});
  const std::string directed = g.directed() ? "true" : "false";
  for (const auto& e : g.edges()) {
    csv::write_row(out, {g.id(e.source), g.id(e.target), std::to_string(e.weight), directed});
  }
}

void write_dot(const AuthorGraph& g, std::ostream& out, std::string_view name) {
  const char* arrow = g.directed() ? " -> " : " -- ";
  out << (g.directed() ? "digraph " : "graph ") << quoted(name) << " {\n";
  out << "  node [style=filled];\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    out << "  " << quoted(g.id(v)) << " [category=" << quoted(label_text(g.label(v)))
        << ", fillcolor=" << colour(g.label(v)) << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << quoted(g.id(e.source)) << arrow << quoted(g.id(e.target))
        << " [weight=" << e.weight << "];\n";
  }
  out << "}\n";
}

void write_nodes_csv(const BipartiteAssignmentGraph& g, std::ostream& out) {
  csv::write_row(out, {"id", "category"});
  const std::string role(to_string(g.role));
  for (const auto& id : g.left) csv::write_row(out, {id, role});
  for (std::size_t j = 0; j < g.right.size(); ++j) {
    csv::write_row(out, {g.right[j], label_text(g.right_labels[j])});
  }
}

void write_edges_csv(const BipartiteAssignmentGraph& g, std::ostream& out) {
  csv::write_row(out, {"src", "dst", "weight", "directed"});
  for (const auto& [i, j] : g.edges) csv::write_row(out, {g.left[i], g.right[j], "1", "true"});
}

void write_dot(const BipartiteAssignmentGraph& g, std::ostream& out) {
  out << "digraph " << quoted(std::string(to_string(g.role)) + "_assignment") << " {\n";
  out << "  node [style=filled];\n";
  const char* role_colour = g.role == Role::reviewer ? "green" : "skyblue";
  for (const auto& id : g.left) {
    out << "  " << quoted(id) << " [category=" << quoted(to_string(g.role))
        << ", fillcolor=" << role_colour << ", shape=box];\n";
  }
  for (std::size_t j = 0; j < g.right.size(); ++j) {
    out << "  " << quoted(g.right[j]) << " [category=" << quoted(label_text(g.right_labels[j]))
        << ", fillcolor=" << colour(g.right_labels[j]) << "];\n";
  }
  for (const auto& [i, j] : g.edges) out << "  " << quoted(g.left[i]) << " -> " << quoted(g.right[j]) << ";\n";
  out << "}\n";
}

}  // namespace peerscope
