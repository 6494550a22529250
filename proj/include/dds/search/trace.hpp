#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace dds {

enum class TraceKind { Choice, Decomposition, Failure, Solution };

/// Search tree recorded during a run, bounded by `node_cap`.
struct SearchTrace {
  struct Node {
    int id = 0;
    int parent = -1;
    TraceKind kind = TraceKind::Choice;
    std::string edge_label;  // label of the edge from the parent
    std::string info;
  };

  explicit SearchTrace(std::size_t cap = 100000) : node_cap(cap) {}

  std::size_t node_cap;
  bool truncated = false;
  std::vector<Node> nodes;

  // Returns the new node's id, or -1 once the cap is reached.
  int add(int parent, TraceKind kind, std::string edge_label, std::string info = {}) {
    if (nodes.size() >= node_cap) {
      truncated = true;
      return -1;
    }
    int id = static_cast<int>(nodes.size());
    nodes.push_back({id, parent, kind, std::move(edge_label), std::move(info)});
    return id;
  }

  [[nodiscard]] std::size_t count(TraceKind kind) const {
    std::size_t n = 0;
    for (const auto& node : nodes) n += node.kind == kind;
    return n;
  }

  [[nodiscard]] std::vector<int> children(int id) const {
    std::vector<int> out;
    for (const auto& node : nodes)
      if (node.parent == id) out.push_back(node.id);
    return out;
  }
};

inline const char* to_string(TraceKind k) {
  switch (k) {
    case TraceKind::Choice: return "choice";
    case TraceKind::Decomposition: return "decomposition";
    case TraceKind::Failure: return "failure";
    case TraceKind::Solution: return "solution";
  }
  return "?";
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering. Choice nodes are circles, decomposition nodes are
/// circles with an inner square, failures filled boxes and solutions
/// diamonds. Each node carries a `kind` attribute for tooling.
inline std::string trace_dot(const SearchTrace& trace) {
  std::ostringstream out;
  out << "digraph search {\n";
  out << "  node [fontname=\"Helvetica\", fontsize=10];\n";
  for (const auto& n : trace.nodes) {
    out << "  n" << n.id << " [kind=\"" << to_string(n.kind) << "\", ";
    switch (n.kind) {
      case TraceKind::Choice:
        out << "shape=circle, label=\"\"";
        break;
      case TraceKind::Decomposition:
        out << "shape=circle, label=<<table border=\"1\" cellborder=\"0\" cellpadding=\"4\"><tr><td></td></tr></table>>";
        break;
      case TraceKind::Failure:
        out << "shape=box, style=filled, fillcolor=\"#d62728\", label=\"\"";
        break;
      case TraceKind::Solution:
        out << "shape=diamond, style=filled, fillcolor=\"#2ca02c\", label=\"\"";
        break;
    }
    if (!n.info.empty()) out << ", tooltip=\"" << detail::dot_escape(n.info) << "\"";
    out << "];\n";
  }
  for (const auto& n : trace.nodes)
    if (n.parent >= 0)
      out << "  n" << n.parent << " -> n" << n.id << " [label=\"" << detail::dot_escape(n.edge_label) << "\"];\n";
  if (trace.truncated) out << "  // trace truncated at " << trace.node_cap << " nodes\n";
  out << "}\n";
  return out.str();
}

}  // namespace dds
