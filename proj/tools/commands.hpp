#ifndef TARSKI_LAB_COMMANDS_HPP
#define TARSKI_LAB_COMMANDS_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tarski::lab {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kError = 1, kWitness = 2 };

/// Bumped whenever the bench columns change.
inline constexpr int kBenchSchemaVersion = 1;

struct BenchRecord {
  std::string instance_id;
  std::string solver;
  Coord n = 0;
  int d = 2;
  std::uint64_t queries = 0;
  double wallclock_ms = 0;
  std::string outcome_kind;
  std::uint64_t seed = 0;
};

struct BenchConfig {
  std::vector<std::string> solvers{"dqy"};
  std::vector<Coord> sizes{256};
  int trials = 10;
  std::uint64_t seed = 0;
  bool timing = false;
  int threads = 0;  ///< 0 means TARSKI_LAB_THREADS or the hardware count
};

/// Solver names accepted by solve and bench.
const std::vector<std::string>& solver_names();

/// Runs a named solver on a box of the oracle's domain. With `paranoid`, dqy
/// cross-checks every query and the other solvers re-verify their result.
SolveOutcome run_solver(const std::string& name, MonotoneOracle& oracle, const GridBox& box, bool paranoid);

/// Seed of the herringbone used for (N, trial) under a bench seed.
std::uint64_t trial_seed(std::uint64_t seed, Coord n, int trial);

/// One record per (solver, N, trial), in that order, whatever the worker count.
std::vector<BenchRecord> run_bench(const BenchConfig& config);
std::string bench_csv(const std::vector<BenchRecord>& records);

/// Worker count from TARSKI_LAB_THREADS, else the hardware concurrency.
int default_threads();

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Results go to `out` unless a --json or --csv file is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tarski::lab

#endif  // TARSKI_LAB_COMMANDS_HPP
