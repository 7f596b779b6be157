#pragma once

// Divide & conquer driver: greedy estimates first, then balanced FlowCutter
// cuts placed on a line above recursively solved components, repeated in
// rounds of growing cost while the budget lasts.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "tdf/decomposition.hpp"
#include "tdf/flowcutter.hpp"
#include "tdf/graph.hpp"
#include "tdf/greedy.hpp"

namespace tdf {

/// bad: only results of depth < bad are wanted. good: any result of depth
/// <= good is good enough to return immediately.
struct Cutoffs {
  std::optional<int> bad;
  std::optional<int> good;
};

class Budget {
public:
  using Clock = std::chrono::steady_clock;

  explicit Budget(std::uint64_t seed = 0) : seed_(seed) {}
  Budget(Clock::duration limit, std::uint64_t seed) : deadline_(Clock::now() + limit), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::optional<Clock::time_point> deadline() const { return deadline_; }

  /// An external flag (set from another thread) that ends the run early.
  void watch(const std::atomic<bool>* stop) { stop_ = stop; }

  bool exhausted() const {
    if (stop_ && stop_->load(std::memory_order_relaxed)) return true;
    return deadline_ && Clock::now() >= *deadline_;
  }

  int round() const { return round_; }
  void next_round() { ++round_; }

private:
  std::optional<Clock::time_point> deadline_;
  std::uint64_t seed_;
  const std::atomic<bool>* stop_ = nullptr;
  int round_ = 0;
};

/// Best verified decomposition so far. Readers get an immutable snapshot, so
/// a concurrent reader never sees a partially written decomposition.
class Incumbent {
public:
  explicit Incumbent(const Graph& g) : g_(g) {}

  /// Accepts `d` if it is strictly shallower than the current best.
  bool offer(const Decomposition& d) {
    {
      std::lock_guard lock(mutex_);
      if (best_ && best_->depth() <= d.depth()) return false;
    }
    if (auto bad = verify_decomposition(g_, d))
      throw std::logic_error("solver produced an invalid decomposition: " + bad->describe());
    auto fresh = std::make_shared<const Decomposition>(d);
    std::lock_guard lock(mutex_);
    if (best_ && best_->depth() <= d.depth()) return false;
    best_ = std::move(fresh);
    history_.push_back(d.depth());
    return true;
  }

  std::shared_ptr<const Decomposition> snapshot() const {
    std::lock_guard lock(mutex_);
    return best_;
  }

  std::optional<int> depth() const {
    std::lock_guard lock(mutex_);
    return best_ ? std::optional<int>(best_->depth()) : std::nullopt;
  }

  /// Depths accepted so far, in order.
  std::vector<int> history() const {
    std::lock_guard lock(mutex_);
    return history_;
  }

private:
  const Graph& g_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Decomposition> best_;
  std::vector<int> history_;
};

struct SolverOptions {
  int superfast_ell = 64;
  int lookahead_ell = kDefaultLookahead;
  /// Use elimination instead of building-with-lookahead while n * depth is at most this.
  std::int64_t elimination_threshold = 10'000'000;
  int base_terminal_pairs = 5;
  /// Round r uses balance_goals[r % size].
  std::vector<Fraction> balance_goals{{1, 5}, {1, 4}, {1, 3}};
  /// 0 means rounds continue until the budget runs out.
  int max_rounds = 8;
  bool divide_and_conquer = true;
};

/// Score weights tried in a round; each round extends the previous list.
inline std::vector<ScoreParams> parameter_sweep(int round) {
  if (round < 0) throw std::invalid_argument("round must be non-negative");
  std::vector<ScoreParams> out{{1, 9, 0}};
  if (round >= 1) out.insert(out.end(), {{1, 4, 0}, {1, 1, 0}, {0, 1, 0}});
  if (round >= 2) out.insert(out.end(), {{1, 9, 1}, {1, 4, 2}});
  if (round >= 3) out.insert(out.end(), {{2, 9, 0}, {1, 20, 0}, {1, 9, 9}});
  return out;
}

class Solver {
public:
  Solver(Budget& budget, SolverOptions options = {})
      : budget_(budget), options_(std::move(options)), rng_(budget.seed()) {}

  /// Best decomposition of `g` found within the budget. Improvements are
  /// published to `incumbent` as they are found.
  Decomposition solve(const Graph& g, Incumbent* incumbent = nullptr) {
    std::optional<Incumbent> local;
    if (!incumbent) incumbent = &local.emplace(g);
    if (g.empty()) {
      auto d = Decomposition::from_parents({});
      incumbent->offer(d);
      return d;
    }

    struct Part {
      Graph graph;
      SubgraphMap map;
      Decomposition best;
      int lower = 0;
    };
    std::vector<Part> parts;
    for (const auto& comp : components(g)) {
      auto [sub, map] = induced_subgraph(g, comp);
      auto quick = greedy_superfast(sub, options_.superfast_ell, degree_order(sub));
      int lower = td_lower_bound(sub, rng_());
      parts.push_back({std::move(sub), std::move(map), std::move(quick.decomposition), lower});
    }
    auto publish = [&] {
      std::vector<Vertex> parent(static_cast<std::size_t>(g.num_vertices()), kNoVertex);
      for (const auto& part : parts)
        for (Vertex v = 0; v < part.graph.num_vertices(); ++v)
          if (!part.best.is_root(v)) parent[part.map.to_parent(v)] = part.map.to_parent(part.best.parent(v));
      incumbent->offer(Decomposition::from_parents(std::move(parent)));
    };
    publish();

    for (int round = 0; options_.max_rounds == 0 || round < options_.max_rounds; ++round) {
      if (budget_.exhausted()) break;
      int top = 0;
      for (const auto& part : parts) top = std::max(top, part.best.depth());
      bool improvable = false;
      for (auto& part : parts) {
        if (part.best.depth() != top || part.lower >= top) continue;
        improvable = true;
        int others = 0;
        for (const auto& other : parts)
          if (&other != &part) others = std::max(others, other.best.depth());
        Cutoffs cutoffs{part.best.depth(), std::max(std::min(others, top - 1), part.lower)};
        if (auto better = solve_connected(part.graph, cutoffs, 0, round, &part.best)) {
          part.best = std::move(*better);
          publish();
        }
        if (budget_.exhausted()) break;
      }
      if (!improvable) break;
      budget_.next_round();
    }
    return *incumbent->snapshot();
  }

  /// Places `cut` on a line (highest degree on top) above decompositions of
  /// the components of g - cut. nullopt if depth < cutoffs.bad is impossible.
  std::optional<Decomposition> split_on_cut(const Graph& g, std::span<const Vertex> cut, Cutoffs cutoffs,
                                            int level = 0, int round = 0) {
    const auto cut_size = static_cast<int>(cut.size());
    std::vector<Vertex> line(cut.begin(), cut.end());
    std::stable_sort(line.begin(), line.end(), [&](Vertex a, Vertex b) {
      return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
    });
    std::vector<char> in_cut(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : line) in_cut[v] = 1;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (!in_cut[v]) rest.push_back(v);
    if (cutoffs.bad && cut_size + (rest.empty() ? 0 : 1) >= *cutoffs.bad) return std::nullopt;

    auto [sub, map] = induced_subgraph(g, rest);
    Cutoffs inner;
    if (cutoffs.bad) inner.bad = *cutoffs.bad - cut_size;
    if (cutoffs.good) inner.good = std::max(0, *cutoffs.good - cut_size);
    auto below = solve_forest(sub, inner, level + 1, round);
    if (!below) return std::nullopt;

    std::vector<Vertex> parent(static_cast<std::size_t>(g.num_vertices()), kNoVertex);
    for (std::size_t i = 1; i < line.size(); ++i) parent[line[i]] = line[i - 1];
    const Vertex hook = line.empty() ? kNoVertex : line.back();
    for (Vertex u = 0; u < sub.num_vertices(); ++u)
      parent[map.to_parent(u)] = below->is_root(u) ? hook : map.to_parent(below->parent(u));
    return Decomposition::from_parents(std::move(parent));
  }

  /// Each component independently; siblings raise each other's good cutoff.
  std::optional<Decomposition> solve_forest(const Graph& g, Cutoffs cutoffs, int level, int round) {
    auto comps = components(g);
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<Vertex> parent(static_cast<std::size_t>(g.num_vertices()), kNoVertex);
    int deepest = 0;
    for (const auto& comp : comps) {
      auto [sub, map] = induced_subgraph(g, comp);
      Cutoffs inner{cutoffs.bad, std::max(cutoffs.good.value_or(0), deepest)};
      auto d = solve_connected(sub, inner, level, round, nullptr);
      if (!d) return std::nullopt;
      deepest = std::max(deepest, d->depth());
      for (Vertex u = 0; u < sub.num_vertices(); ++u)
        if (!d->is_root(u)) parent[map.to_parent(u)] = map.to_parent(d->parent(u));
    }
    return Decomposition::from_parents(std::move(parent));
  }

  /// Connected `g`: greedy runs, then one divide step on a balanced cut.
  std::optional<Decomposition> solve_connected(const Graph& g, Cutoffs cutoffs, int level, int round,
                                               const Decomposition* hint) {
    const Vertex n = g.num_vertices();
    auto wanted = [&](const Decomposition& d) { return !cutoffs.bad || d.depth() < *cutoffs.bad; };
    if (n <= 2) {
      std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
      if (n == 2) parent[1] = 0;
      auto d = Decomposition::from_parents(std::move(parent));
      return wanted(d) ? std::optional(std::move(d)) : std::nullopt;
    }
    const int lower = td_lower_bound(g, rng_());
    if (cutoffs.bad && lower >= *cutoffs.bad) return std::nullopt;
    const int enough = std::max(lower, cutoffs.good.value_or(0));

    auto quick = greedy_superfast(g, options_.superfast_ell, hint ? height_order(*hint) : degree_order(g));
    Decomposition best = hint && hint->depth() <= quick.depth ? *hint : std::move(quick.decomposition);
    if (best.depth() <= enough) return wanted(best) ? std::optional(std::move(best)) : std::nullopt;
    // Inside a recursion, give up on parts whose quick estimate is far off;
    // the allowed slack grows with the round.
    if (level > 0 && cutoffs.bad && quick.depth >= *cutoffs.bad + round) return std::nullopt;

    const bool eliminate = static_cast<std::int64_t>(n) * best.depth() <= options_.elimination_threshold;
    for (const auto& params : parameter_sweep(level == 0 ? round : 0)) {
      if (budget_.exhausted()) break;
      auto scores = height_scores(best);
      auto result = eliminate ? greedy_eliminate(g, params, scores, best.depth())
                              : greedy_build_lookahead(g, params, scores, options_.lookahead_ell, best.depth());
      if (result && result->depth < best.depth()) best = std::move(result->decomposition);
      if (best.depth() <= enough) return wanted(best) ? std::optional(std::move(best)) : std::nullopt;
    }

    if (options_.divide_and_conquer && level <= round && !budget_.exhausted()) {
      int bad = cutoffs.bad ? std::min(*cutoffs.bad, best.depth()) : best.depth();
      if (auto cut = choose_cut(g, bad, round)) {
        if (auto split = split_on_cut(g, cut->cut, Cutoffs{bad, cutoffs.good}, level, round))
          if (split->depth() < best.depth()) best = std::move(*split);
      }
    }
    return wanted(best) ? std::optional(std::move(best)) : std::nullopt;
  }

  /// Per terminal pair, the first cut reaching the round's balance goal; the
  /// smallest of those (then most balanced) wins.
  std::optional<CutResult> choose_cut(const Graph& g, int bad, int round) {
    // A cut of size c costs at least c + 1 levels.
    const int size_limit = bad - 1;
    if (size_limit < 1) return std::nullopt;
    CutEnumerationOptions cut_options;
    cut_options.terminal_pairs = options_.base_terminal_pairs << std::min(round, 10);
    cut_options.balance_goal = options_.balance_goals[static_cast<std::size_t>(round) % options_.balance_goals.size()];
    cut_options.size_limit = size_limit;
    cut_options.seed = rng_();

    std::optional<CutResult> best;
    Fraction best_balance;
    int taken_pair = -1;
    enumerate_cuts(g, cut_options, [&](const CutCandidate& c) {
      if (budget_.exhausted()) return false;
      if (c.pair_index() == taken_pair || c.balance() < cut_options.balance_goal || c.size() >= size_limit)
        return true;
      taken_pair = c.pair_index();
      if (!best || c.size() < best->size() || (c.size() == best->size() && c.balance() > best_balance)) {
        best = c.materialize();
        best_balance = c.balance();
      }
      return true;
    });
    return best;
  }

private:
  Budget& budget_;
  SolverOptions options_;
  std::mt19937_64 rng_;
};

/// Convenience wrapper around Solver::solve.
inline Decomposition solve(const Graph& g, Budget& budget, const SolverOptions& options = {},
                           Incumbent* incumbent = nullptr) {
  return Solver(budget, options).solve(g, incumbent);
}

}  // namespace tdf
