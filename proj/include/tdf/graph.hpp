#pragma once

// Immutable undirected simple graph with sorted adjacency, PACE `.gr`
// ingestion, and the cheap structural routines the solver leans on.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdf {

/// Dense 0-based vertex index. External formats are 1-based.
using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

using Edge = std::pair<Vertex, Vertex>;

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + ", line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Compressed sparse row storage; neighbors(v) is strictly ascending.
class Graph {
public:
  Graph() : offsets_(1, 0) {}

  /// Builds from an edge list over [0, n). Duplicates (in either
  /// orientation) collapse; self-loops and out-of-range ids throw.
  static Graph from_edges(Vertex n, std::span<const Edge> edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("vertex out of range");
      if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u + 1));
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) {
      ++g.offsets_[static_cast<std::size_t>(u) + 1];
      g.targets_.push_back(v);
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    return g;
  }

  static Graph from_edges(Vertex n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  Vertex num_vertices() const { return static_cast<Vertex>(offsets_.size() - 1); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(targets_.size() / 2); }
  bool empty() const { return num_vertices() == 0; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  Vertex degree(Vertex v) const { return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]); }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Arc ids index the CSR target array; arc a goes from its owner to target(a).
  std::size_t arc_begin(Vertex v) const { return offsets_[v]; }
  std::size_t arc_end(Vertex v) const { return offsets_[v + 1]; }
  std::size_t num_arcs() const { return targets_.size(); }
  Vertex target(std::size_t arc) const { return targets_[arc]; }

  /// Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(targets_.size() / 2);
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Maps each vertex of an induced subgraph back to its parent graph.
struct SubgraphMap {
  std::vector<Vertex> original_of;

  Vertex to_parent(Vertex v) const { return original_of[v]; }
  /// Composes with the map of the parent graph, yielding ids one level up.
  SubgraphMap compose(const SubgraphMap& parent_map) const {
    SubgraphMap out;
    out.original_of.reserve(original_of.size());
    for (Vertex v : original_of) out.original_of.push_back(parent_map.original_of[v]);
    return out;
  }
};

/// Reads the PACE 2020 `.gr` format: `c` comment lines, one header line
/// `p <descriptor> <n> <m>`, then `u v` edge lines with 1-based ids.
inline Graph parse_gr(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::int64_t n = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;

    std::istringstream fields(line);
    if (line[first] == 'p') {
      if (have_header) throw ParseError("duplicate header", line_no);
      std::string p, descriptor;
      std::int64_t m = 0;
      if (!(fields >> p >> descriptor >> n >> m) || n < 0 || m < 0 || n > INT32_MAX - 1)
        throw ParseError("malformed header", line_no);
      std::string extra;
      if (fields >> extra) throw ParseError("malformed header", line_no);
      have_header = true;
      edges.reserve(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 26)));
      continue;
    }

    if (!have_header) throw ParseError("edge before header", line_no);
    std::int64_t u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) throw ParseError("malformed edge", line_no);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError("vertex out of range", line_no);
    if (u == v) throw ParseError("self-loop", line_no);
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (!have_header) throw ParseError("missing header", line_no);
  return Graph::from_edges(static_cast<Vertex>(n), edges);
}

inline Graph parse_gr(const std::string& text) {
  std::istringstream in(text);
  return parse_gr(in);
}

/// Connected components, each sorted ascending, ordered by smallest member.
inline std::vector<std::vector<Vertex>> components(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    auto& comp = out.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
  }
  return out;
}

/// Subgraph induced by `vs`, re-indexed densely in the order given.
inline std::pair<Graph, SubgraphMap> induced_subgraph(const Graph& g, std::span<const Vertex> vs) {
  std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), kNoVertex);
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (Vertex w : g.neighbors(vs[i]))
      if (local[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), local[w]);
  SubgraphMap map{std::vector<Vertex>(vs.begin(), vs.end())};
  return {Graph::from_edges(static_cast<Vertex>(vs.size()), edges), std::move(map)};
}

/// Bucket-queue min-degree peeling; within a bucket the lowest id goes first.
inline int degeneracy(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<Vertex> deg(static_cast<std::size_t>(n));
  Vertex max_deg = 0;
  for (Vertex v = 0; v < n; ++v) max_deg = std::max(max_deg, deg[v] = g.degree(v));

  // Batagelj-Zaversnik layout: vertices sorted by current degree, bin_start
  // marks where each degree begins, pos is the inverse of order.
  std::vector<Vertex> bin_start(static_cast<std::size_t>(max_deg) + 2, 0);
  for (Vertex v = 0; v < n; ++v) ++bin_start[deg[v] + 1];
  std::partial_sum(bin_start.begin(), bin_start.end(), bin_start.begin());
  std::vector<Vertex> order(static_cast<std::size_t>(n)), pos(static_cast<std::size_t>(n));
  {
    auto fill = bin_start;
    for (Vertex v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      order[pos[v]] = v;
    }
  }

  int result = 0;
  for (Vertex i = 0; i < n; ++i) {
    Vertex v = order[i];
    result = std::max(result, static_cast<int>(deg[v]));
    for (Vertex w : g.neighbors(v)) {
      if (pos[w] <= i || deg[w] <= deg[v]) continue;
      // Move w to the front of its bin, then shrink the bin.
      Vertex dw = deg[w];
      Vertex front_pos = std::max(bin_start[dw], i + 1);
      Vertex front = order[front_pos];
      if (front != w) {
        std::swap(order[front_pos], order[pos[w]]);
        std::swap(pos[front], pos[w]);
      }
      bin_start[dw] = front_pos + 1;
      --deg[w];
    }
  }
  return result;
}

/// One randomized DFS per component, from a random start with shuffled
/// neighbor order. Returns the most vertices seen on any root-to-node path.
inline int dfs_longest_path(const Graph& g, std::uint64_t seed) {
  const Vertex n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> nbrs(static_cast<std::size_t>(n));
  int best = 0;

  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (const auto& comp : components(g)) {
    Vertex start = comp[std::uniform_int_distribution<std::size_t>(0, comp.size() - 1)(rng)];
    seen[start] = 1;
    stack.push_back({start, 0});
    auto load = [&](Vertex v) {
      auto nb = g.neighbors(v);
      nbrs[v].assign(nb.begin(), nb.end());
      std::shuffle(nbrs[v].begin(), nbrs[v].end(), rng);
    };
    load(start);
    while (!stack.empty()) {
      best = std::max(best, static_cast<int>(stack.size()));
      Frame& top = stack.back();
      auto& list = nbrs[top.v];
      while (top.next < list.size() && seen[list[top.next]]) ++top.next;
      if (top.next == list.size()) {
        std::vector<Vertex>().swap(list);
        stack.pop_back();
        continue;
      }
      Vertex w = list[top.next++];
      seen[w] = 1;
      load(w);
      stack.push_back({w, 0});
    }
  }
  return best;
}

/// max(degeneracy + 1, ceil(log2(p + 1))) for the DFS path witness p.
inline int td_lower_bound(const Graph& g, std::uint64_t seed) {
  if (g.empty()) return 0;
  auto p = static_cast<std::uint64_t>(dfs_longest_path(g, seed));
  int path_bound = static_cast<int>(std::bit_width(p));  // == ceil(log2(p + 1))
  return std::max(degeneracy(g) + 1, path_bound);
}

}  // namespace tdf
