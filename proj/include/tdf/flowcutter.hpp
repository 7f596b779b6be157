#pragma once

// FlowCutter on vertex cuts and unit vertex capacities.
//
// Every vertex v is split implicitly into an entry node (2v) and an exit
// node (2v+1) joined by a unit-capacity arc; graph edges become uncapacitated
// arcs exit(u) -> entry(w) in both directions. Terminals have unbounded
// internal capacity. The flow is kept as a net value in {-1, 0, 1} per arc of
// the CSR graph, and reachability from the sources and towards the targets is
// grown incrementally until the next augmentation invalidates it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "tdf/graph.hpp"

namespace tdf {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
  friend auto operator<=>(const Fraction& a, const Fraction& b) { return a.num * b.den <=> b.num * a.den; }
};

enum class Side { Source, Target };

/// A vertex separator. No edge joins side_small and side_large.
struct CutResult {
  std::vector<Vertex> cut;
  std::vector<Vertex> side_small;
  std::vector<Vertex> side_large;

  Vertex size() const { return static_cast<Vertex>(cut.size()); }
  Vertex total() const { return static_cast<Vertex>(cut.size() + side_small.size() + side_large.size()); }
  Fraction balance() const { return {static_cast<std::int64_t>(side_small.size()), total()}; }
};

/// A path in the split residual network. `vertices()` may repeat a vertex:
/// the path can enter a saturated vertex and later leave it backwards.
struct AugmentingPath {
  std::vector<std::size_t> nodes;  // 2v = entry, 2v + 1 = exit

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (auto node : nodes) {
      auto v = static_cast<Vertex>(node / 2);
      if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
  }
};

class VertexFlow {
public:
  enum class Role : std::uint8_t { None, Source, Target };

  explicit VertexFlow(const Graph& g)
      : g_(g),
        role_(static_cast<std::size_t>(g.num_vertices()), Role::None),
        inflow_(static_cast<std::size_t>(g.num_vertices()), 0),
        flow_(g.num_arcs(), 0),
        reverse_(g.num_arcs()),
        source_reach_(g),
        target_reach_(g) {
    for (Vertex u = 0; u < g.num_vertices(); ++u)
      for (std::size_t a = g.arc_begin(u); a < g.arc_end(u); ++a) {
        Vertex w = g.target(a);
        auto nb = g.neighbors(w);
        reverse_[a] = g.arc_begin(w) + static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
      }
  }

  const Graph& graph() const { return g_; }
  Role role(Vertex v) const { return role_[v]; }
  bool is_terminal(Vertex v) const { return role_[v] != Role::None; }
  /// Some unit of flow enters v (the internal arc of a non-terminal is full).
  bool saturated(Vertex v) const { return inflow_[v] > 0; }
  int flow_value() const { return flow_value_; }
  /// Net flow from u to its neighbor w.
  int flow_on(Vertex u, Vertex w) const {
    auto nb = g_.neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), w);
    return flow_[g_.arc_begin(u) + static_cast<std::size_t>(it - nb.begin())];
  }
  /// A source is adjacent to a target; no vertex cut separates them.
  bool terminals_adjacent() const { return terminals_adjacent_; }
  Vertex source_side_size() const { return source_reach_.side_count; }
  Vertex target_side_size() const { return target_reach_.side_count; }

  void add_source(Vertex v) { add_terminal(v, Role::Source); }
  void add_target(Vertex v) { add_terminal(v, Role::Target); }

  /// Grows source reachability until a target node is met.
  std::optional<AugmentingPath> find_augmenting_path() {
    if (found_ == kNone) found_ = grow_source();
    if (found_ == kNone) return std::nullopt;
    AugmentingPath path;
    // Stop at the first source: a vertex absorbed after it was reached keeps
    // its old predecessor.
    for (auto node = found_; node != kNone; node = source_reach_.pred[node]) {
      path.nodes.push_back(node);
      if (role_[node / 2] == Role::Source) break;
    }
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
  }

  /// Pushes one unit along `path` (as returned by find_augmenting_path).
  void augment(const AugmentingPath& path) {
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
      auto from = path.nodes[i - 1], to = path.nodes[i];
      auto u = static_cast<Vertex>(from / 2), w = static_cast<Vertex>(to / 2);
      if (u == w) continue;
      auto a = arc_between(u, w);
      // Net flows: pushing against an opposite unit cancels it, which can
      // empty a vertex without the path crossing its internal arc.
      if (flow_[a] == -1)
        --inflow_[u];
      else
        ++inflow_[w];
      ++flow_[a];
      --flow_[reverse_[a]];
      if (flow_[a] > 1) throw std::logic_error("edge flow exceeded unit capacity");
    }
    ++flow_value_;
    invalidate();
  }

  /// Augments until the flow is maximum. Returns the number of augmentations.
  int saturate() {
    int count = 0;
    while (auto path = find_augmenting_path()) {
      augment(*path);
      ++count;
    }
    return count;
  }

  /// Finishes both reachability searches; throws if the flow is not maximum.
  void complete_reach() {
    if (find_augmenting_path()) throw std::logic_error("augmenting path exists; flow is not maximum");
    if (grow_target() != kNone) throw std::logic_error("augmenting path exists; flow is not maximum");
  }

  /// The cut bounding the chosen side's residual reach. nullopt when a
  /// source is adjacent to a target.
  std::optional<CutResult> extract_cut(Side side) {
    complete_reach();
    if (terminals_adjacent_) return std::nullopt;
    std::vector<Vertex> near, cut, far;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (in_side(side, v))
        near.push_back(v);
      else if (in_cut(side, v))
        cut.push_back(v);
      else
        far.push_back(v);
    }
    if (near.size() > far.size()) std::swap(near, far);
    return CutResult{std::move(cut), std::move(near), std::move(far)};
  }

  /// Cut vertices bounding `side` (valid after complete_reach).
  std::vector<Vertex> cut_vertices(Side side) {
    auto& reach = side == Side::Source ? source_reach_ : target_reach_;
    auto& frontier = reach.frontier;
    std::erase_if(frontier, [&](Vertex v) { return !in_cut(side, v); });
    std::vector<Vertex> out(frontier.begin(), frontier.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Moves every vertex of `side`'s reach into that side's terminal set.
  void absorb_side(Side side) {
    auto& reach = side == Side::Source ? source_reach_ : target_reach_;
    auto role = side == Side::Source ? Role::Source : Role::Target;
    // A vertex may be on the side through its exit node only; as a terminal
    // its entry node becomes reachable too, which can extend the reach.
    for (; reach.absorbed < reach.side_list.size(); ++reach.absorbed) {
      Vertex v = reach.side_list[reach.absorbed];
      if (role_[v] != Role::None) continue;
      role_[v] = role;
      seed(reach, v, side == Side::Source);
    }
    if ((side == Side::Source ? grow_source() : grow_target()) != kNone)
      throw std::logic_error("absorbing a side opened an augmenting path");
  }

  /// Picks the cut vertex of `side` to pierce: not adjacent to the opposite
  /// terminals, preferring one that opens no augmenting path, then the one
  /// farthest from the opposite terminal (by `distance`), then lowest id.
  std::optional<Vertex> select_piercing_vertex(Side side, std::span<const int> distance) {
    const Role opposite = side == Side::Source ? Role::Target : Role::Source;
    std::optional<Vertex> best;
    bool best_augments = true;
    for (Vertex x : cut_vertices(side)) {
      auto nb = g_.neighbors(x);
      if (std::any_of(nb.begin(), nb.end(), [&](Vertex y) { return role_[y] == opposite; })) continue;
      bool augments = side == Side::Source ? target_reach_.reached(2 * x + 1) : source_reach_.reached(2 * x);
      if (!best || (!augments && best_augments) ||
          (augments == best_augments && distance[x] > distance[*best])) {
        best = x;
        best_augments = augments;
      }
    }
    return best;
  }

private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  /// Epoch-stamped BFS state over split nodes.
  struct Reach {
    explicit Reach(const Graph& g)
        : stamp(2 * static_cast<std::size_t>(g.num_vertices()), 0), pred(2 * static_cast<std::size_t>(g.num_vertices()), kNone) {}

    bool reached(std::size_t node) const { return stamp[node] == epoch; }
    void reset() {
      ++epoch;
      queue.clear();
      head = 0;
      side_count = 0;
      side_list.clear();
      frontier.clear();
      absorbed = 0;
      seeded = false;
    }

    std::vector<std::uint32_t> stamp;
    std::vector<std::size_t> pred;
    std::uint32_t epoch = 1;
    std::vector<std::size_t> queue;
    std::size_t head = 0;
    Vertex side_count = 0;
    std::vector<Vertex> side_list;  // vertices on this side, in discovery order
    std::vector<Vertex> frontier;   // candidates for the cut; filtered lazily
    std::size_t absorbed = 0;
    bool seeded = false;
  };

  std::size_t arc_between(Vertex u, Vertex w) const {
    auto nb = g_.neighbors(u);
    return g_.arc_begin(u) + static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), w) - nb.begin());
  }

  // Source side: exit node reached. Target side: entry node co-reaches.
  bool in_side(Side side, Vertex v) const {
    return side == Side::Source ? source_reach_.reached(2 * static_cast<std::size_t>(v) + 1)
                                : target_reach_.reached(2 * static_cast<std::size_t>(v));
  }
  bool in_cut(Side side, Vertex v) const {
    auto in = 2 * static_cast<std::size_t>(v), out = in + 1;
    return side == Side::Source ? source_reach_.reached(in) && !source_reach_.reached(out)
                                : target_reach_.reached(out) && !target_reach_.reached(in);
  }

  void add_terminal(Vertex v, Role role) {
    if (role_[v] != Role::None && role_[v] != role) throw std::logic_error("vertex is already a terminal of the other side");
    if (role_[v] == role) return;
    role_[v] = role;
    const Role opposite = role == Role::Source ? Role::Target : Role::Source;
    for (Vertex y : g_.neighbors(v))
      if (role_[y] == opposite) terminals_adjacent_ = true;
    // Extend the matching search in place; the other one stays valid unless
    // an augmenting path appears, which the next search reports.
    auto& reach = role == Role::Source ? source_reach_ : target_reach_;
    if (reach.seeded) seed(reach, v, role == Role::Source);
    found_ = kNone;
    if (role == Role::Target && source_reach_.seeded &&
        (source_reach_.reached(2 * static_cast<std::size_t>(v)) || source_reach_.reached(2 * static_cast<std::size_t>(v) + 1)))
      invalidate();
  }

  void invalidate() {
    source_reach_.reset();
    target_reach_.reset();
    found_ = kNone;
  }

  void mark(Reach& reach, std::size_t node, std::size_t pred, bool source_search) {
    reach.stamp[node] = reach.epoch;
    reach.pred[node] = pred;
    reach.queue.push_back(node);
    auto v = static_cast<Vertex>(node / 2);
    bool side_node = source_search ? (node & 1) : !(node & 1);
    if (side_node) {
      ++reach.side_count;
      reach.side_list.push_back(v);
    } else {
      reach.frontier.push_back(v);
    }
  }

  void seed(Reach& reach, Vertex v, bool source_search) {
    auto in = 2 * static_cast<std::size_t>(v);
    // Mark the non-side node first so the frontier entry is filtered later.
    if (!reach.reached(in + (source_search ? 0 : 1))) mark(reach, in + (source_search ? 0 : 1), kNone, source_search);
    if (!reach.reached(in + (source_search ? 1 : 0))) mark(reach, in + (source_search ? 1 : 0), kNone, source_search);
  }

  void ensure_seeded(Reach& reach, Role role, bool source_search) {
    if (reach.seeded) return;
    reach.seeded = true;
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (role_[v] == role) seed(reach, v, source_search);
  }

  // Residual arcs of the split network:
  //   entry(v) -> exit(v)    if v is a terminal or unsaturated
  //   exit(v)  -> entry(v)   if v is a saturated non-terminal
  //   exit(u)  -> entry(w)   for every edge; unit capacity between terminals
  //   entry(w) -> exit(u)    if flow runs from u to w
  bool internal_forward(Vertex v) const { return is_terminal(v) || inflow_[v] == 0; }
  bool internal_backward(Vertex v) const { return !is_terminal(v) && inflow_[v] > 0; }
  bool edge_forward(std::size_t arc, Vertex u, Vertex w) const {
    return !(is_terminal(u) && is_terminal(w)) || flow_[arc] < 1;
  }

  /// BFS from the sources; returns a reached target node or kNone.
  std::size_t grow_source() {
    auto& reach = source_reach_;
    ensure_seeded(reach, Role::Source, true);
    auto visit = [&](std::size_t node, std::size_t from) -> bool {
      if (reach.reached(node)) return false;
      mark(reach, node, from, true);
      return role_[node / 2] == Role::Target;
    };
    while (reach.head < reach.queue.size()) {
      auto node = reach.queue[reach.head++];
      auto v = static_cast<Vertex>(node / 2);
      if (role_[v] == Role::Target) return node;
      if ((node & 1) == 0) {
        if (internal_forward(v) && visit(node + 1, node)) return node + 1;
        for (std::size_t a = g_.arc_begin(v); a < g_.arc_end(v); ++a)
          if (flow_[a] == -1 && visit(2 * static_cast<std::size_t>(g_.target(a)) + 1, node))
            return 2 * static_cast<std::size_t>(g_.target(a)) + 1;
      } else {
        if (internal_backward(v) && visit(node - 1, node)) return node - 1;
        for (std::size_t a = g_.arc_begin(v); a < g_.arc_end(v); ++a) {
          Vertex w = g_.target(a);
          if (edge_forward(a, v, w) && visit(2 * static_cast<std::size_t>(w), node)) return 2 * static_cast<std::size_t>(w);
        }
      }
    }
    return kNone;
  }

  /// Reverse BFS from the targets; returns a reached source node or kNone.
  std::size_t grow_target() {
    auto& reach = target_reach_;
    ensure_seeded(reach, Role::Target, false);
    auto visit = [&](std::size_t node, std::size_t from) -> bool {
      if (reach.reached(node)) return false;
      mark(reach, node, from, false);
      return role_[node / 2] == Role::Source;
    };
    while (reach.head < reach.queue.size()) {
      auto node = reach.queue[reach.head++];
      auto v = static_cast<Vertex>(node / 2);
      if (role_[v] == Role::Source) return node;
      if (node & 1) {
        // Predecessors of exit(v): entry(v), and entry(w) where v sends flow to w.
        if (internal_forward(v) && visit(node - 1, node)) return node - 1;
        for (std::size_t a = g_.arc_begin(v); a < g_.arc_end(v); ++a)
          if (flow_[a] == 1 && visit(2 * static_cast<std::size_t>(g_.target(a)), node))
            return 2 * static_cast<std::size_t>(g_.target(a));
      } else {
        // Predecessors of entry(v): exit(v) if saturated, exit(u) for every neighbor.
        if (internal_backward(v) && visit(node + 1, node)) return node + 1;
        for (std::size_t a = g_.arc_begin(v); a < g_.arc_end(v); ++a) {
          Vertex u = g_.target(a);
          if (edge_forward(reverse_[a], u, v) && visit(2 * static_cast<std::size_t>(u) + 1, node))
            return 2 * static_cast<std::size_t>(u) + 1;
        }
      }
    }
    return kNone;
  }

  const Graph& g_;
  std::vector<Role> role_;
  std::vector<std::int32_t> inflow_;  // net units entering each vertex
  std::vector<std::int8_t> flow_;
  std::vector<std::size_t> reverse_;
  Reach source_reach_;
  Reach target_reach_;
  std::size_t found_ = kNone;
  int flow_value_ = 0;
  bool terminals_adjacent_ = false;
};

/// Breadth-first hop distances from `from`; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, Vertex from) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<Vertex> queue{from};
  dist[from] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

/// What enumerate_cuts hands to its callback. Sizes are O(1); the full
/// vertex partition is built on request.
class CutCandidate {
public:
  CutCandidate(VertexFlow& flow, Side side, Vertex source, Vertex target, int pair_index)
      : flow_(flow), side_(side), source_(source), target_(target), pair_index_(pair_index) {}

  Vertex size() const { return static_cast<Vertex>(flow_.flow_value()); }
  Vertex small_side_size() const {
    return side_ == Side::Source ? flow_.source_side_size() : flow_.target_side_size();
  }
  Fraction balance() const { return {small_side_size(), flow_.graph().num_vertices()}; }
  Side side() const { return side_; }
  Vertex source() const { return source_; }
  Vertex target() const { return target_; }
  int pair_index() const { return pair_index_; }
  CutResult materialize() const { return *flow_.extract_cut(side_); }

private:
  VertexFlow& flow_;
  Side side_;
  Vertex source_, target_;
  int pair_index_;
};

struct CutEnumerationOptions {
  int terminal_pairs = 20;
  Fraction balance_goal{1, 5};
  Vertex size_limit = INT32_MAX;
  std::uint64_t seed = 0;
};

/// Runs FlowCutter from `terminal_pairs` random source/target pairs. Per pair
/// a cut is emitted only when it is more balanced than every earlier one, so
/// emitted sizes never decrease while balance strictly increases. A pair stops
/// once a cut reaches the balance goal or the size limit. The callback returns
/// false to stop the whole enumeration. Adjacent pairs are skipped.
inline void enumerate_cuts(const Graph& g, const CutEnumerationOptions& options,
                           const std::function<bool(const CutCandidate&)>& emit) {
  const Vertex n = g.num_vertices();
  if (n < 2) throw std::logic_error("cut enumeration needs at least two vertices");
  if (components(g).size() != 1) throw std::logic_error("cut enumeration needs a connected graph");

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  for (int pair = 0; pair < options.terminal_pairs; ++pair) {
    Vertex s = pick(rng), t = pick(rng);
    while (t == s) t = pick(rng);
    if (g.adjacent(s, t)) continue;

    VertexFlow flow(g);
    flow.add_source(s);
    flow.add_target(t);
    const auto from_source = bfs_distances(g, s);
    const auto from_target = bfs_distances(g, t);
    std::optional<Fraction> emitted;
    for (;;) {
      flow.saturate();
      flow.complete_reach();
      Side side = flow.source_side_size() <= flow.target_side_size() ? Side::Source : Side::Target;
      CutCandidate candidate(flow, side, s, t, pair);
      if (!emitted || *emitted < candidate.balance()) {
        emitted = candidate.balance();
        if (!emit(candidate)) return;
      }
      if (candidate.balance() >= options.balance_goal || candidate.size() >= options.size_limit) break;

      flow.absorb_side(side);
      auto pierce = flow.select_piercing_vertex(side, side == Side::Source ? from_target : from_source);
      if (!pierce) break;
      if (side == Side::Source)
        flow.add_source(*pierce);
      else
        flow.add_target(*pierce);
    }
  }
}

}  // namespace tdf
