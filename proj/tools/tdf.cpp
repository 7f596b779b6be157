// tdf: heuristic treedepth decompositions in the PACE 2020 format.
//
//   tdf [options] < graph.gr > graph.tree
//   tdf verify --graph graph.gr --tree graph.tree
//
// SIGTERM or SIGINT makes the process print the best decomposition found so
// far and exit 0.

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "tdf/cli.hpp"

namespace {

struct Shared {
  std::atomic<bool> stop{false};
  std::atomic<bool> emitted{false};
  std::atomic<const tdf::Graph*> graph{nullptr};
  std::atomic<const tdf::Incumbent*> incumbent{nullptr};
};

Shared shared;

void write_all(const std::string& text) {
  const char* p = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    ssize_t n = ::write(STDOUT_FILENO, p, left);
    if (n <= 0) return;
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

/// Writes the final tree once per process; later callers get false.
int emit(const tdf::Graph& g, const tdf::Incumbent* incumbent) {
  if (shared.emitted.exchange(true)) return -1;
  tdf::Incumbent empty(g);
  auto d = tdf::cli::best_or_trivial(g, incumbent ? *incumbent : empty);
  if (auto violation = tdf::verify_decomposition(g, d)) {
    std::cerr << "c internal error: " << violation->describe() << std::endl;
    return tdf::cli::kInternalError;
  }
  write_all(tdf::format_tree(d));
  std::cerr << "c depth " << d.depth() << std::endl;
  return tdf::cli::kOk;
}

void start_signal_thread(sigset_t signals) {
  std::thread([signals] {
    int sig = 0;
    if (sigwait(&signals, &sig) != 0) return;
    shared.stop = true;
    const auto* g = shared.graph.load();
    if (!g) return;  // still parsing; main notices the stop flag
    int status = emit(*g, shared.incumbent.load());
    if (status >= 0) ::_exit(status);
  }).detach();
}

int run_solve(const tdf::cli::RunConfig& config) {
  tdf::Graph g;
  try {
    g = tdf::cli::read_graph(config.input, std::cin);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return tdf::cli::kParseError;
  }
  tdf::Incumbent incumbent(g);
  shared.incumbent = &incumbent;
  shared.graph = &g;

  tdf::Budget budget = config.time_limit > 0
                           ? tdf::Budget(std::chrono::duration_cast<tdf::Budget::Clock::duration>(
                                             std::chrono::duration<double>(config.time_limit)),
                                         config.seed)
                           : tdf::Budget(config.seed);
  budget.watch(&shared.stop);
  if (!shared.stop) tdf::cli::run_mode(g, config, budget, incumbent);

  int status = emit(g, &incumbent);
  if (status < 0) pause();  // the signal thread is writing and will exit
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGINT);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  CLI::App app{"Heuristic treedepth decompositions (PACE .gr in, .tree out)"};
  tdf::cli::RunConfig config;
  std::string mode = "full", balance;
  int ell = 0;
  app.add_option("-i,--input", config.input, "Input .gr file (default: standard input)");
  app.add_option("-t,--time-limit", config.time_limit, "Seconds to run; 0 runs until SIGTERM")
      ->check(CLI::NonNegativeNumber);
  app.add_option("-s,--seed", config.seed, "Random seed (TDF_SEED overrides)");
  app.add_option("-m,--mode", mode, "Heuristic to run")
      ->check(CLI::IsMember({"full", "superfast", "build", "build-lookahead", "eliminate"}));
  app.add_option("-b,--balance", balance, "Balance goal for cuts, as a/b or decimal in (0, 0.5]");
  app.add_option("-l,--ell", ell, "Lookahead for superfast / build-lookahead")->check(CLI::PositiveNumber);
  app.add_option("--max-rounds", config.max_rounds, "Escalation rounds in full mode (0: unbounded)")
      ->check(CLI::NonNegativeNumber);

  std::string graph_path, tree_path;
  auto* verify = app.add_subcommand("verify", "Check a .tree against a .gr");
  verify->add_option("-g,--graph", graph_path, "Graph file")->required();
  verify->add_option("-t,--tree", tree_path, "Tree file")->required();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : tdf::cli::kParseError;
  }

  if (*verify) return tdf::cli::run_verify(graph_path, tree_path, std::cin, std::cout, std::cerr);

  try {
    config.mode = tdf::cli::parse_mode(mode);
    if (!balance.empty()) config.balance = tdf::cli::parse_balance(balance);
    if (ell > 0) config.ell = ell;
    if (const char* env = std::getenv("TDF_SEED")) config.seed = std::stoull(env);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return tdf::cli::kParseError;
  }

  start_signal_thread(signals);
  return run_solve(config);
}
