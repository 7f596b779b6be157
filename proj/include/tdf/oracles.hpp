#pragma once

// Brute-force ground truth for small instances: strong and weak
// reachability under an ordering, and exact treedepth by subset recursion.
// Deliberately independent of the union-find machinery.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tdf/decomposition.hpp"
#include "tdf/graph.hpp"

namespace tdf::oracle {

/// Vertices earlier than v reachable from v through vertices later than v.
inline std::vector<Vertex> sreach(const Graph& g, const Ordering& order, Vertex v) {
  const Vertex pos_v = order.position(v);
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<Vertex> out, stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : g.neighbors(x)) {
      if (seen[y]) continue;
      seen[y] = 1;
      if (order.position(y) < pos_v)
        out.push_back(y);
      else
        stack.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Transitive closure of sreach starting from v.
inline std::vector<Vertex> wreach(const Graph& g, const Ordering& order, Vertex v) {
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<Vertex> out, stack{v};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : sreach(g, order, x)) {
      if (seen[y]) continue;
      seen[y] = 1;
      out.push_back(y);
      stack.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr Vertex kExactTdMaxVertices = 14;

/// td(empty) = 0; disconnected: max over components; connected:
/// 1 + min over v of td(G - v). Memoized over vertex subsets.
inline int exact_td(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n > kExactTdMaxVertices) throw std::invalid_argument("exact treedepth oracle is limited to 14 vertices");
  std::vector<std::uint32_t> nbr_mask(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nbr_mask[v] |= 1u << w;
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);

  auto lowest = [](std::uint32_t s) { return static_cast<Vertex>(__builtin_ctz(s)); };
  auto component_of = [&](std::uint32_t set, Vertex start) {
    std::uint32_t comp = 1u << start, frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr_mask[lowest(f)];
      next &= set & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  };

  auto solve = [&](auto&& self, std::uint32_t set) -> int {
    if (set == 0) return 0;
    if (memo[set] >= 0) return memo[set];
    int result;
    std::uint32_t comp = component_of(set, lowest(set));
    if (comp != set) {
      result = std::max(self(self, comp), self(self, set & ~comp));
    } else {
      result = INT32_MAX;
      for (std::uint32_t s = set; s; s &= s - 1)
        result = std::min(result, 1 + self(self, set & ~(1u << lowest(s))));
    }
    memo[set] = static_cast<std::int8_t>(result);
    return result;
  };
  return solve(solve, n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

}  // namespace tdf::oracle
