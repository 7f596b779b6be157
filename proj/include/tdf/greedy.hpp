#pragma once

// Greedy ordering heuristics: elimination, building, building with heap
// lookahead, and the heap-free super-fast building with a small window.
//
// All variants pop the minimum (score, id) vertex and place it at the end of
// the ordering built so far, so low scores land deep in the tree. Scores
// combine a degree term, the height of the subtree under the vertex, and a
// static per-vertex score supplied by the caller.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdf/decomposition.hpp"
#include "tdf/graph.hpp"
#include "tdf/heap.hpp"

namespace tdf {

struct ScoreParams {
  std::int64_t alpha = 1;  // degree
  std::int64_t beta = 9;   // height
  std::int64_t gamma = 0;  // static score

  friend bool operator==(const ScoreParams&, const ScoreParams&) = default;
};

struct GreedyResult {
  Decomposition decomposition;
  Ordering ordering;
  int depth = 0;
};

/// Optional instrumentation, indexed by vertex. Filled when passed in.
struct GreedyTrace {
  std::vector<std::int64_t> degree_at_pop;
  std::vector<int> height_at_pop;
  std::size_t initial_retained = 0;  // total capacity of neighbor lists at start
  std::size_t peak_retained = 0;     // building variants only

  void reset(Vertex n) {
    degree_at_pop.assign(static_cast<std::size_t>(n), 0);
    height_at_pop.assign(static_cast<std::size_t>(n), 0);
    initial_retained = peak_retained = 0;
  }
};

namespace detail {

inline std::int64_t static_score(std::span<const std::int64_t> init_score, Vertex v) {
  return init_score.empty() ? 0 : init_score[v];
}

inline std::vector<std::vector<Vertex>> copy_adjacency(const Graph& g) {
  std::vector<std::vector<Vertex>> nb(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto list = g.neighbors(v);
    nb[v].assign(list.begin(), list.end());
  }
  return nb;
}

inline void release(std::vector<Vertex>& list) { std::vector<Vertex>().swap(list); }

inline GreedyResult finish(const Graph& g, std::vector<Vertex> reversed, std::vector<Vertex> parent) {
  std::reverse(reversed.begin(), reversed.end());
  GreedyResult out;
  out.ordering = Ordering(std::move(reversed));
  out.decomposition = parent.empty() ? build_from_ordering(g, out.ordering)
                                     : Decomposition::from_parents(std::move(parent));
  out.depth = out.decomposition.depth();
  return out;
}

/// Shared state of the two heap-driven building variants.
class Builder {
public:
  Builder(const Graph& g, ScoreParams params, std::span<const std::int64_t> init_score, std::optional<int> bad_cutoff,
          GreedyTrace* trace)
      : g_(g),
        params_(params),
        init_score_(init_score),
        bad_cutoff_(bad_cutoff),
        trace_(trace),
        nb_(copy_adjacency(g)),
        parent_(static_cast<std::size_t>(g.num_vertices()), kNoVertex),
        state_(static_cast<std::size_t>(g.num_vertices())),
        forest_(g.num_vertices()),
        heap_(g.num_vertices()) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      state_[v] = {params_.gamma * static_score(init_score_, v), 1, g.degree(v), 0};
      retained_ += nb_[v].capacity();
      heap_.push(v, key(v, g.degree(v)));
    }
    budget_ = retained_;
    if (trace_) {
      trace_->reset(g.num_vertices());
      trace_->initial_retained = trace_->peak_retained = retained_;
    }
  }

  std::optional<GreedyResult> run(std::optional<int> lookahead) {
    while (!heap_.empty()) {
      if (lookahead) reevaluate_top(*lookahead);
      if (!process(heap_.pop())) return std::nullopt;
    }
    return finish(g_, std::move(reversed_), std::move(parent_));
  }

private:
  std::int64_t key(Vertex x, std::int64_t degree_term) const {
    return params_.alpha * degree_term + params_.beta * state_[x].height + state_[x].static_key;
  }

  std::uint32_t next_epoch() {
    if (++epoch_ == 0) {
      for (auto& s : state_) s.mark = 0;
      epoch_ = 1;
    }
    return epoch_;
  }

  /// Size of the contracted neighborhood t would get if processed now.
  std::int64_t exact_degree(Vertex t) {
    const auto epoch = next_epoch();
    std::int64_t count = 0;
    auto take = [&](Vertex z) {
      if (z != t && !forest_.processed(z) && state_[z].mark != epoch) {
        state_[z].mark = epoch;
        ++count;
      }
    };
    for (Vertex y : g_.neighbors(t)) {
      if (!forest_.processed(y)) {
        take(y);
        continue;
      }
      Vertex r = forest_.find(y);
      if (state_[r].mark == epoch) continue;
      state_[r].mark = epoch;
      for (Vertex z : nb_[r]) take(z);
    }
    return count;
  }

  void reevaluate_top(int ell) {
    for (int step = 0; step < ell; ++step) {
      Vertex t = heap_.top();
      auto fresh = key(t, exact_degree(t));
      if (fresh == heap_.key(t)) return;
      heap_.update(t, fresh);
      if (heap_.top() == t) return;
    }
  }

  bool process(Vertex v) {
    reversed_.push_back(v);
    forest_.make_root(v);

    roots_.clear();
    Vertex big = kNoVertex;
    for (Vertex y : g_.neighbors(v)) {
      if (!forest_.processed(y)) continue;
      Vertex r = forest_.find(y);
      if (r == v) continue;
      parent_[r] = v;
      forest_.link(r, v);
      roots_.push_back(r);
      if (big == kNoVertex || nb_[r].size() > nb_[big].size()) big = r;
    }

    // The largest absorbed list is reused in place. Root lists only hold
    // unprocessed vertices apart from v itself.
    const auto epoch = next_epoch();
    std::vector<Vertex> merged;
    if (big != kNoVertex) {
      retained_ -= nb_[big].capacity();
      merged = std::move(nb_[big]);
      std::size_t kept = 0;
      for (Vertex z : merged)
        if (z != v) {
          state_[z].mark = epoch;
          merged[kept++] = z;
        }
      merged.resize(kept);
    }
    std::size_t extra = nb_[v].size();
    retained_ -= nb_[v].capacity();
    for (Vertex r : roots_)
      if (r != big) {
        extra += nb_[r].size();
        retained_ -= nb_[r].capacity();
      }
    // Grow geometrically while the total stays within the initial budget.
    const std::size_t need = merged.size() + extra;
    if (need > merged.capacity()) merged.reserve(std::max(need, std::min(2 * need, budget_ - retained_)));
    auto take = [&](Vertex z) {
      if (!forest_.processed(z) && state_[z].mark != epoch) {
        state_[z].mark = epoch;
        merged.push_back(z);
      }
    };
    for (Vertex z : nb_[v]) take(z);
    release(nb_[v]);
    for (Vertex r : roots_) {
      if (r == big) continue;
      for (Vertex z : nb_[r]) take(z);
      release(nb_[r]);
    }
    nb_[v] = std::move(merged);
    retained_ += nb_[v].capacity();

    const auto degree = static_cast<std::int64_t>(nb_[v].size());
    if (trace_) {
      trace_->degree_at_pop[v] = degree;
      trace_->height_at_pop[v] = state_[v].height;
      trace_->peak_retained = std::max(trace_->peak_retained, retained_);
    }
    // v's contracted neighbors all end up above it.
    if (bad_cutoff_ && state_[v].height + degree >= *bad_cutoff_) return false;

    const int above = state_[v].height + 1;
    for (Vertex x : nb_[v]) {
      state_[x].height = std::max(state_[x].height, above);
      auto degree_term = std::max<std::int64_t>(state_[x].degree, degree);
      heap_.update(x, key(x, degree_term));
    }
    return true;
  }

  const Graph& g_;
  ScoreParams params_;
  std::span<const std::int64_t> init_score_;
  std::optional<int> bad_cutoff_;
  GreedyTrace* trace_;

  std::vector<std::vector<Vertex>> nb_;
  std::vector<Vertex> parent_;
  // Per-vertex fields read together on every update.
  struct State {
    std::int64_t static_key = 0;
    int height = 1;
    Vertex degree = 0;  // original; unprocessed vertices keep their adjacency
    std::uint32_t mark = 0;
  };
  std::vector<State> state_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> roots_;
  std::vector<Vertex> reversed_;
  std::size_t retained_ = 0;
  std::size_t budget_ = 0;
  AncestorForest forest_;
  ScoredHeap heap_;
};

}  // namespace detail

/// Simulates elimination: the popped vertex's neighborhood becomes a clique
/// (sorted merge-union). Parents come from a second building pass over the
/// final ordering. Returns nullopt once depth < bad_cutoff is out of reach.
inline std::optional<GreedyResult> greedy_eliminate(const Graph& g, ScoreParams params,
                                                    std::span<const std::int64_t> init_score = {},
                                                    std::optional<int> bad_cutoff = {},
                                                    GreedyTrace* trace = nullptr) {
  const Vertex n = g.num_vertices();
  auto nb = detail::copy_adjacency(g);
  std::vector<int> height(static_cast<std::size_t>(n), 1);
  auto key = [&](Vertex x) {
    return params.alpha * static_cast<std::int64_t>(nb[x].size()) + params.beta * height[x] +
           params.gamma * detail::static_score(init_score, x);
  };
  ScoredHeap heap(n);
  for (Vertex v = 0; v < n; ++v) heap.push(v, key(v));
  if (trace) trace->reset(n);

  std::vector<Vertex> reversed;
  reversed.reserve(static_cast<std::size_t>(n));
  std::vector<Vertex> merged;
  while (!heap.empty()) {
    Vertex v = heap.pop();
    reversed.push_back(v);
    const auto& clique = nb[v];
    if (trace) {
      trace->degree_at_pop[v] = static_cast<std::int64_t>(clique.size());
      trace->height_at_pop[v] = height[v];
    }
    // clique + v end up on one root path, v lowest with its own subtree below.
    if (bad_cutoff && height[v] + static_cast<int>(clique.size()) >= *bad_cutoff) return std::nullopt;

    for (Vertex x : clique) {
      // nb[x] := (nb[x] - v) u (clique - x), both sorted by id.
      merged.clear();
      merged.reserve(nb[x].size() + clique.size());
      auto a = nb[x].begin(), a_end = nb[x].end();
      auto b = clique.begin(), b_end = clique.end();
      while (a != a_end || b != b_end) {
        Vertex z;
        if (b == b_end || (a != a_end && *a < *b))
          z = *a++;
        else if (a == a_end || *b < *a)
          z = *b++;
        else {
          z = *a++;
          ++b;
        }
        if (z != v && z != x) merged.push_back(z);
      }
      nb[x] = std::vector<Vertex>(merged.begin(), merged.end());

      height[x] = std::max(height[x], height[v] + 1);
      if (bad_cutoff && height[x] >= *bad_cutoff) return std::nullopt;
      heap.update(x, key(x));
    }
    detail::release(nb[v]);
  }
  return detail::finish(g, std::move(reversed), {});
}

/// Building process driven by the heap; neighbor lists of absorbed
/// component roots are freed so total retained memory never grows.
inline std::optional<GreedyResult> greedy_build(const Graph& g, ScoreParams params,
                                                std::span<const std::int64_t> init_score = {},
                                                std::optional<int> bad_cutoff = {},
                                                GreedyTrace* trace = nullptr) {
  return detail::Builder(g, params, init_score, bad_cutoff, trace).run(std::nullopt);
}

inline constexpr int kDefaultLookahead = 1024;

/// greedy_build, but before each pop the top vertex is re-keyed with its
/// exact contracted degree, up to `ell` times or until the top is stable.
inline std::optional<GreedyResult> greedy_build_lookahead(const Graph& g, ScoreParams params,
                                                          std::span<const std::int64_t> init_score = {},
                                                          int ell = kDefaultLookahead,
                                                          std::optional<int> bad_cutoff = {},
                                                          GreedyTrace* trace = nullptr) {
  if (ell < 1) throw std::invalid_argument("lookahead must be at least 1");
  return detail::Builder(g, params, init_score, bad_cutoff, trace).run(ell);
}

/// Heap-free building over `init_order`: each step processes, among the last
/// `ell` unprocessed vertices, the one that would get the smallest height
/// (ties go to the later position).
inline GreedyResult greedy_superfast(const Graph& g, int ell, const Ordering& init_order) {
  const Vertex n = g.num_vertices();
  if (ell < 1) throw std::invalid_argument("lookahead must be at least 1");
  if (init_order.size() != n) throw std::invalid_argument("ordering size does not match graph");

  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  std::vector<int> height(static_cast<std::size_t>(n), 0);
  detail::AncestorForest forest(n);
  std::vector<Vertex> reversed;
  reversed.reserve(static_cast<std::size_t>(n));

  std::vector<Vertex> window;  // positions in init_order
  Vertex next_pos = n - 1;
  auto refill = [&] {
    while (static_cast<int>(window.size()) < ell && next_pos >= 0) window.push_back(next_pos--);
  };
  auto prospective_height = [&](Vertex c) {
    int h = 0;
    for (Vertex y : g.neighbors(c))
      if (forest.processed(y)) h = std::max(h, height[forest.find(y)]);
    return h + 1;
  };

  refill();
  while (!window.empty()) {
    std::size_t best = 0;
    int best_height = INT32_MAX;
    for (std::size_t i = 0; i < window.size(); ++i) {
      int h = prospective_height(init_order[window[i]]);
      if (h < best_height || (h == best_height && window[i] > window[best])) {
        best = i;
        best_height = h;
      }
    }
    Vertex v = init_order[window[best]];
    window[best] = window.back();
    window.pop_back();
    refill();

    reversed.push_back(v);
    forest.make_root(v);
    height[v] = best_height;
    for (Vertex y : g.neighbors(v)) {
      if (!forest.processed(y)) continue;
      Vertex r = forest.find(y);
      if (r == v) continue;
      parent[r] = v;
      forest.link(r, v);
    }
  }
  return detail::finish(g, std::move(reversed), std::move(parent));
}

/// Static order: higher degree first, ties by lower id.
inline Ordering degree_order(const Graph& g) {
  std::vector<Vertex> seq(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) seq[v] = v;
  std::stable_sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return Ordering(std::move(seq));
}

/// Static order from a decomposition: taller subtrees first, ties by lower id.
inline Ordering height_order(const Decomposition& d) {
  auto height = d.subtree_heights();
  std::vector<Vertex> seq(static_cast<std::size_t>(d.size()));
  for (Vertex v = 0; v < d.size(); ++v) seq[v] = v;
  std::stable_sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) { return height[a] > height[b]; });
  return Ordering(std::move(seq));
}

/// Per-vertex subtree heights of `d`, as static scores for the heap variants.
inline std::vector<std::int64_t> height_scores(const Decomposition& d) {
  auto h = d.subtree_heights();
  return {h.begin(), h.end()};
}

}  // namespace tdf
