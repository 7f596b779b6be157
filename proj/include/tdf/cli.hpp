#pragma once

// Mode dispatch and the `verify` subcommand, kept out of main() so tests can
// drive them without spawning a process.

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tdf/decomposition.hpp"
#include "tdf/graph.hpp"
#include "tdf/greedy.hpp"
#include "tdf/solver.hpp"
#include "tdf/tree_io.hpp"

namespace tdf::cli {

enum class Mode { Full, Superfast, Build, BuildLookahead, Eliminate };

inline Mode parse_mode(const std::string& name) {
  if (name == "full") return Mode::Full;
  if (name == "superfast") return Mode::Superfast;
  if (name == "build") return Mode::Build;
  if (name == "build-lookahead") return Mode::BuildLookahead;
  if (name == "eliminate") return Mode::Eliminate;
  throw std::invalid_argument("unknown mode: " + name);
}

/// Accepts "a/b" or a decimal in (0, 1/2].
inline Fraction parse_balance(const std::string& text) {
  Fraction f;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    f = {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
  } else {
    f = {static_cast<std::int64_t>(std::stod(text) * 1'000'000 + 0.5), 1'000'000};
  }
  if (f.den <= 0 || f.num <= 0 || Fraction{1, 2} < f) throw std::invalid_argument("balance must lie in (0, 1/2]");
  return f;
}

struct RunConfig {
  std::string input;  // empty: standard input
  double time_limit = 0;  // seconds; 0 runs until interrupted
  std::uint64_t seed = 0;
  Mode mode = Mode::Full;
  std::optional<Fraction> balance;
  std::optional<int> ell;
  int max_rounds = 0;
};

enum ExitStatus : int { kOk = 0, kInvalid = 1, kParseError = 2, kInternalError = 3 };

inline Graph read_graph(const std::string& path, std::istream& fallback) {
  if (path.empty() || path == "-") return parse_gr(fallback);
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  return parse_gr(file);
}

/// Runs the configured heuristic, publishing results to `incumbent`.
inline void run_mode(const Graph& g, const RunConfig& config, Budget& budget, Incumbent& incumbent) {
  const ScoreParams params{};
  switch (config.mode) {
    case Mode::Full: {
      SolverOptions options;
      options.max_rounds = config.max_rounds;
      if (config.balance) options.balance_goals = {*config.balance};
      if (config.ell) options.lookahead_ell = *config.ell;
      Solver(budget, options).solve(g, &incumbent);
      return;
    }
    case Mode::Superfast:
      incumbent.offer(greedy_superfast(g, config.ell.value_or(64), degree_order(g)).decomposition);
      return;
    case Mode::Build:
      incumbent.offer(greedy_build(g, params)->decomposition);
      return;
    case Mode::BuildLookahead:
      incumbent.offer(greedy_build_lookahead(g, params, {}, config.ell.value_or(kDefaultLookahead))->decomposition);
      return;
    case Mode::Eliminate:
      incumbent.offer(greedy_eliminate(g, params)->decomposition);
      return;
  }
}

/// The incumbent, or the identity-order building result when there is none.
inline Decomposition best_or_trivial(const Graph& g, const Incumbent& incumbent) {
  if (auto best = incumbent.snapshot()) return *best;
  return build_from_ordering(g, Ordering::identity(g.num_vertices()));
}

/// `verify`: 0 when the tree is a valid decomposition of the graph with an
/// exact depth line, 1 on a violation, 2 when either file fails to parse.
inline int run_verify(const std::string& graph_path, const std::string& tree_path, std::istream& in,
                      std::ostream& out, std::ostream& err) {
  Graph g;
  Decomposition d;
  try {
    g = read_graph(graph_path, in);
    std::ifstream tree(tree_path);
    if (!tree) throw std::runtime_error("cannot open " + tree_path);
    d = parse_tree(tree, g.num_vertices());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  if (auto violation = verify_decomposition(g, d)) {
    err << "invalid: " << violation->describe() << '\n';
    return kInvalid;
  }
  out << "valid, depth " << d.depth() << '\n';
  return kOk;
}

}  // namespace tdf::cli
