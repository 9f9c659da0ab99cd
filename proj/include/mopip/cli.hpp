#pragma once

#include "mopip/problems.hpp"
#include "mopip/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mopip {

/// One (instance, algorithm) run as reported by solve and bench.
struct RunRecord {
  std::string family;  // empty for hand-written instances
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string algorithm;
  long gb_millis = 0;
  long total_millis = 0;
  std::size_t n_vars = 0;
  std::size_t n_gens = 0;
  unsigned max_deg = 0;
  std::size_t n_nondominated = 0;
  std::string status;  // solved, infeasible, budget_exceeded, error
};

struct RunOutcome {
  RunRecord record;
  std::optional<ParetoResult> result;
  std::string error;
};

/// Runs one algorithm; budget overruns and solver errors end up in the record status.
RunOutcome run_algorithm(const GeneratedInstance& inst, Algorithm algorithm, const SolveOptions& options);

inline constexpr const char* kCsvHeader = "family,n,seed,algorithm,gb_ms,total_ms,n_vars,n_gens,max_deg,n_nd,status";
std::string csv_row(const RunRecord& r);

/// JSON document with the Pareto sets and the run record; rationals as "num/den".
std::string result_document(const RunOutcome& outcome);

/// Exit codes.
inline constexpr int kExitSolved = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitMismatch = 4;

/// Budget from --budget, else MOPIP_BUDGET, else the library default.
BuchbergerOptions budget_options(std::optional<std::uint64_t> flag);

struct SolveCommand {
  std::string input;
  Algorithm algorithm = Algorithm::alg1;
  std::optional<SlackMode> slack_mode;
  std::optional<std::uint64_t> budget;
  GroebnerEngine engine = GroebnerEngine::split;
  std::string output;  // empty: stdout
};

struct GenCommand {
  Family family = Family::biobj_linkn;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::string output;
};

struct VerifyCommand {
  std::string input;
  std::vector<Algorithm> algorithms;  // empty: every pipeline
  std::optional<std::uint64_t> budget;
  GroebnerEngine engine = GroebnerEngine::split;
};

struct BenchCommand {
  std::vector<Family> families;
  std::size_t n_min = 2;
  std::size_t n_max = 4;
  std::uint64_t seeds = 5;  // seeds 1..K
  std::vector<Algorithm> algorithms;  // empty: every pipeline and brute
  std::optional<std::uint64_t> budget;
  GroebnerEngine engine = GroebnerEngine::split;
  std::string csv;  // empty: stdout
  unsigned jobs = 1;
};

int cmd_solve(const SolveCommand& c, std::ostream& out, std::ostream& err);
int cmd_gen(const GenCommand& c, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCommand& c, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchCommand& c, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to the commands above.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mopip
