#pragma once

// PACE `.tree` output: the depth on the first line, then the 1-based parent
// of every vertex in order, 0 for roots.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tdf/decomposition.hpp"
#include "tdf/graph.hpp"

namespace tdf {

inline std::string format_tree(const Decomposition& d) {
  std::string out = std::to_string(d.depth());
  out += '\n';
  for (Vertex v = 0; v < d.size(); ++v) {
    out += std::to_string(d.is_root(v) ? 0 : d.parent(v) + 1);
    out += '\n';
  }
  return out;
}

inline void write_tree(const Decomposition& d, std::ostream& sink) {
  auto text = format_tree(d);
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
}

/// Reads a `.tree` for a graph on n vertices. Parents are range-checked but
/// the forest structure and the claimed depth are left to the verifier.
/// Blank lines and `c` comment lines are skipped.
inline Decomposition parse_tree(std::istream& in, Vertex n) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<int> depth;
  std::vector<Vertex> parent;
  parent.reserve(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::istringstream fields(line);
    long long value = 0;
    std::string extra;
    if (!(fields >> value) || (fields >> extra)) throw ParseError("malformed tree line", line_no);
    if (!depth) {
      if (value < 0) throw ParseError("negative depth", line_no);
      depth = static_cast<int>(value);
      continue;
    }
    if (static_cast<Vertex>(parent.size()) == n) throw ParseError("more parent entries than vertices", line_no);
    if (value < 0 || value > n) throw ParseError("parent out of range", line_no);
    parent.push_back(static_cast<Vertex>(value) - 1);
  }
  if (!depth) throw ParseError("missing depth line", line_no);
  if (static_cast<Vertex>(parent.size()) != n) throw ParseError("fewer parent entries than vertices", line_no);
  return Decomposition::unchecked(std::move(parent), *depth);
}

inline Decomposition parse_tree(const std::string& text, Vertex n) {
  std::istringstream in(text);
  return parse_tree(in, n);
}

}  // namespace tdf
