#pragma once

// Treedepth decompositions as parent vectors, orderings, the building
// process that turns an ordering into a decomposition, and a verifier that
// runs the same process in O(min(m*alpha(n), n*d)).

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdf/graph.hpp"

namespace tdf {

class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rooted forest on V(G) given by parent links; kNoVertex marks a root.
class Decomposition {
public:
  Decomposition() = default;

  /// Computes depth and roots. Throws StructuralError on out-of-range
  /// parents or parent cycles.
  static Decomposition from_parents(std::vector<Vertex> parent) {
    Decomposition d;
    d.parent_ = std::move(parent);
    auto depth = compute_depth(d.parent_);
    if (!depth) throw StructuralError("parent links contain a cycle or an out-of-range id");
    d.depth_ = *depth;
    d.collect_roots();
    return d;
  }

  /// Stores a claimed depth without checking anything. For decompositions
  /// read from files, which verify_decomposition then judges.
  static Decomposition unchecked(std::vector<Vertex> parent, int claimed_depth) {
    Decomposition d;
    d.parent_ = std::move(parent);
    d.depth_ = claimed_depth;
    for (std::size_t v = 0; v < d.parent_.size(); ++v)
      if (d.parent_[v] == kNoVertex) d.roots_.push_back(static_cast<Vertex>(v));
    return d;
  }

  Vertex size() const { return static_cast<Vertex>(parent_.size()); }
  Vertex parent(Vertex v) const { return parent_[v]; }
  bool is_root(Vertex v) const { return parent_[v] == kNoVertex; }
  std::span<const Vertex> parents() const { return parent_; }
  const std::vector<Vertex>& roots() const { return roots_; }
  int depth() const { return depth_; }

  /// Number of vertices on the root path of each vertex (roots have 1), or
  /// nullopt if the links are not a forest.
  static std::optional<std::vector<int>> vertex_depths(std::span<const Vertex> parent) {
    const auto n = static_cast<Vertex>(parent.size());
    std::vector<int> level(parent.size(), 0);
    std::vector<Vertex> chain;
    for (Vertex v = 0; v < n; ++v) {
      Vertex x = v;
      // Walk up until a vertex with known level; a revisit means a cycle.
      while (x != kNoVertex && level[x] <= 0) {
        if (level[x] < 0) return std::nullopt;
        level[x] = -1;
        chain.push_back(x);
        Vertex p = parent[x];
        if (p != kNoVertex && (p < 0 || p >= n)) return std::nullopt;
        x = p;
      }
      int base = x == kNoVertex ? 0 : level[x];
      while (!chain.empty()) {
        level[chain.back()] = ++base;
        chain.pop_back();
      }
    }
    return level;
  }

  /// Height of the subtree rooted at each vertex (leaves have 1).
  std::vector<int> subtree_heights() const {
    std::vector<int> height(parent_.size(), 1);
    auto levels = vertex_depths(parent_);
    std::vector<Vertex> by_level(parent_.size());
    for (std::size_t v = 0; v < parent_.size(); ++v) by_level[v] = static_cast<Vertex>(v);
    std::sort(by_level.begin(), by_level.end(),
              [&](Vertex a, Vertex b) { return (*levels)[a] > (*levels)[b]; });
    for (Vertex v : by_level)
      if (parent_[v] != kNoVertex) height[parent_[v]] = std::max(height[parent_[v]], height[v] + 1);
    return height;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

private:
  static std::optional<int> compute_depth(std::span<const Vertex> parent) {
    auto levels = vertex_depths(parent);
    if (!levels) return std::nullopt;
    int depth = 0;
    for (int l : *levels) depth = std::max(depth, l);
    return depth;
  }

  void collect_roots() {
    roots_.clear();
    for (std::size_t v = 0; v < parent_.size(); ++v)
      if (parent_[v] == kNoVertex) roots_.push_back(static_cast<Vertex>(v));
  }

  std::vector<Vertex> parent_;
  std::vector<Vertex> roots_;
  int depth_ = 0;
};

/// A permutation of the vertices; earlier means higher in the tree.
class Ordering {
public:
  Ordering() = default;

  explicit Ordering(std::vector<Vertex> seq) : seq_(std::move(seq)), position_(seq_.size(), kNoVertex) {
    const auto n = static_cast<Vertex>(seq_.size());
    for (Vertex i = 0; i < n; ++i) {
      Vertex v = seq_[i];
      if (v < 0 || v >= n || position_[v] != kNoVertex)
        throw std::invalid_argument("ordering is not a permutation");
      position_[v] = i;
    }
  }

  static Ordering identity(Vertex n) {
    std::vector<Vertex> seq(static_cast<std::size_t>(n));
    for (Vertex i = 0; i < n; ++i) seq[i] = i;
    return Ordering(std::move(seq));
  }

  Vertex size() const { return static_cast<Vertex>(seq_.size()); }
  Vertex operator[](Vertex i) const { return seq_[i]; }
  Vertex position(Vertex v) const { return position_[v]; }
  bool before(Vertex a, Vertex b) const { return position_[a] < position_[b]; }
  std::span<const Vertex> sequence() const { return seq_; }

  friend bool operator==(const Ordering& a, const Ordering& b) { return a.seq_ == b.seq_; }

private:
  std::vector<Vertex> seq_;
  std::vector<Vertex> position_;
};

namespace detail {

/// Union-find over processed vertices whose pointers always lead to a tree
/// ancestor. No union by rank; finds use path halving.
class AncestorForest {
public:
  explicit AncestorForest(Vertex n) : ancestor_(static_cast<std::size_t>(n), kNoVertex) {}

  bool processed(Vertex v) const { return ancestor_[v] != kNoVertex; }
  void make_root(Vertex v) { ancestor_[v] = v; }
  void link(Vertex child_root, Vertex new_root) { ancestor_[child_root] = new_root; }

  Vertex find(Vertex v) {
    while (ancestor_[v] != v) {
      ancestor_[v] = ancestor_[ancestor_[v]];
      v = ancestor_[v];
    }
    return v;
  }

private:
  std::vector<Vertex> ancestor_;
};

}  // namespace detail

/// Topological order of the forest (BFS from roots, children by id).
inline Ordering ordering_from_parents(const Decomposition& d) {
  const Vertex n = d.size();
  std::vector<std::vector<Vertex>> children(static_cast<std::size_t>(n));
  std::vector<Vertex> seq;
  seq.reserve(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    Vertex p = d.parent(v);
    if (p == kNoVertex)
      seq.push_back(v);
    else if (p < 0 || p >= n || p == v)
      throw StructuralError("parent of vertex " + std::to_string(v + 1) + " is invalid");
    else
      children[p].push_back(v);
  }
  for (std::size_t head = 0; head < seq.size(); ++head)
    for (Vertex c : children[seq[head]]) seq.push_back(c);
  if (seq.size() != static_cast<std::size_t>(n)) throw StructuralError("parent links contain a cycle");
  return Ordering(std::move(seq));
}

/// Processes vertices from last to first; each processed neighbor's
/// component root becomes a child of the current vertex.
inline Decomposition build_from_ordering(const Graph& g, const Ordering& order) {
  const Vertex n = g.num_vertices();
  if (order.size() != n) throw std::invalid_argument("ordering size does not match graph");
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  detail::AncestorForest forest(n);
  for (Vertex i = n - 1; i >= 0; --i) {
    Vertex v = order[i];
    forest.make_root(v);
    for (Vertex y : g.neighbors(v)) {
      if (!forest.processed(y)) continue;
      Vertex r = forest.find(y);
      if (r != v) {
        parent[r] = v;
        forest.link(r, v);
      }
    }
  }
  return Decomposition::from_parents(std::move(parent));
}

struct Violation {
  enum class Kind { SizeMismatch, InvalidParent, Cycle, NonAncestralEdge, DepthMismatch };
  Kind kind;
  Vertex u = kNoVertex;  // edge endpoint or offending vertex
  Vertex v = kNoVertex;
  int claimed_depth = 0;
  int actual_depth = 0;

  /// Human-readable form with 1-based ids.
  std::string describe() const {
    switch (kind) {
      case Kind::SizeMismatch: return "parent vector size does not match vertex count";
      case Kind::InvalidParent: return "vertex " + std::to_string(u + 1) + " has an invalid parent";
      case Kind::Cycle: return "parent links contain a cycle through vertex " + std::to_string(u + 1);
      case Kind::NonAncestralEdge:
        return "edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) +
               " joins vertices that are not in an ancestor relation";
      case Kind::DepthMismatch:
        return "claimed depth " + std::to_string(claimed_depth) + " but actual depth is " +
               std::to_string(actual_depth);
    }
    return "unknown violation";
  }
};

/// nullopt when `d` is a valid treedepth decomposition of `g` whose stated
/// depth is exact; otherwise the first problem found.
///
/// Runs the building process over a topological order of `d`. When v is
/// processed its claimed children are linked under it, so a processed
/// neighbor y resolves to v exactly when v is an ancestor of y.
inline std::optional<Violation> verify_decomposition(const Graph& g, const Decomposition& d) {
  using Kind = Violation::Kind;
  const Vertex n = g.num_vertices();
  if (d.size() != n) return Violation{Kind::SizeMismatch};
  for (Vertex v = 0; v < n; ++v) {
    Vertex p = d.parent(v);
    if (p != kNoVertex && (p < 0 || p >= n || p == v)) return Violation{Kind::InvalidParent, v};
  }
  auto levels = Decomposition::vertex_depths(d.parents());
  if (!levels) {
    // Report some vertex that never reaches a root.
    std::vector<char> reaches(static_cast<std::size_t>(n), 0);
    for (Vertex r : d.roots()) reaches[r] = 1;
    for (Vertex v = 0; v < n; ++v) {
      Vertex x = v;
      for (Vertex steps = 0; x != kNoVertex && !reaches[x] && steps <= n; ++steps) x = d.parent(x);
      if (x == kNoVertex || !reaches[x]) return Violation{Kind::Cycle, v};
    }
    return Violation{Kind::Cycle, 0};
  }
  const Ordering order = ordering_from_parents(d);

  std::vector<std::vector<Vertex>> children(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    if (d.parent(v) != kNoVertex) children[d.parent(v)].push_back(v);

  detail::AncestorForest forest(n);
  for (Vertex i = n - 1; i >= 0; --i) {
    Vertex v = order[i];
    forest.make_root(v);
    for (Vertex c : children[v]) forest.link(c, v);
    for (Vertex y : g.neighbors(v)) {
      if (!forest.processed(y)) continue;
      if (forest.find(y) != v) return Violation{Kind::NonAncestralEdge, std::min(v, y), std::max(v, y)};
    }
  }

  int actual = 0;
  for (int l : *levels) actual = std::max(actual, l);
  if (actual != d.depth()) return Violation{Kind::DepthMismatch, kNoVertex, kNoVertex, d.depth(), actual};
  return std::nullopt;
}

}  // namespace tdf
