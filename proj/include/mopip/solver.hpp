#pragma once

#include "mopip/groebner.hpp"
#include "mopip/problem.hpp"
#include "mopip/systems.hpp"

#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mopip {

using Point = std::vector<Rational>;

/// Values for a prefix of a system's solve order; other entries are unset.
struct PartialSolution {
  Point values;
  std::uint64_t assigned = 0;  // bit i set when values[i] is known

  explicit PartialSolution(std::size_t nvars) : values(nvars, Rational(0)) {}
  [[nodiscard]] bool has(std::size_t i) const noexcept { return ((assigned >> i) & 1U) != 0; }
  void set(std::size_t i, Rational v) {
    values[i] = std::move(v);
    assigned |= std::uint64_t{1} << i;
  }
  bool operator==(const PartialSolution&) const = default;
};

/// A non-decision variable whose specialized basis vanishes identically.
class ExtensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decision variable came out of triangular solving with a value outside {0, 1}.
class ModelDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Values of variable `v` extending `partial` on the variety of G.
///
/// Basis elements whose variables are all assigned except `v` are specialized
/// and their common rational roots returned. When all of them vanish a decision
/// variable falls back to {0, 1}; any other variable raises ExtensionError.
/// Roots of sign-filtered variables below zero are dropped.
std::vector<Rational> extend(const TransformedSystem& ts, const GroebnerBasis& G, const PartialSolution& partial,
                             std::size_t v);

/// Rational points of the variety over the first `depth` variables of the solve order.
std::vector<PartialSolution> enumerate_variety(const TransformedSystem& ts, const GroebnerBasis& G, std::size_t depth);

/// Continues every partial solution up to `depth` variables of the solve order.
std::vector<PartialSolution> enumerate_from(const TransformedSystem& ts, const GroebnerBasis& G,
                                            std::vector<PartialSolution> start, std::size_t depth);

/// Number of leading solve-order variables needed to cover every variable of `role`.
std::size_t depth_through(const TransformedSystem& ts, VarRole role);

/// Points not dominated by another point of the set (minimization, exact).
std::set<Point> pareto_filter(const std::set<Point>& points);

/// True when a <= b componentwise and a != b.
bool dominates(const Point& a, const Point& b);

enum class Algorithm { alg1, kkt, kkt_sl, fj, fj_sl, mofj, brute };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class Provenance { alg1, kkt, nr, fj, mofj, brute };

std::string_view provenance_name(Provenance p);

enum class SolveStatus { solved, infeasible };

struct EfficientPoint {
  Point x;
  Point y;
  Provenance source;
};

struct ParetoResult {
  SolveStatus status = SolveStatus::infeasible;
  /// Nondominated objective vectors.
  std::set<Point> nondominated;
  /// Every feasible x mapping onto a nondominated vector, sorted by x.
  std::vector<EfficientPoint> efficient;

  [[nodiscard]] std::set<Point> efficient_set() const;
};

/// split: branch over the binary variables (see split.hpp); direct: one Buchberger run on the whole system.
/// Both give the same reduced bases.
enum class GroebnerEngine { split, direct };

struct SolveOptions {
  BuchbergerOptions buchberger;
  GroebnerEngine engine = GroebnerEngine::split;
  /// Slack handling for alg1 (linear) and the condition systems (keep).
  std::optional<SlackMode> slack_mode;
  /// Brute force refuses more than this many binary variables.
  std::size_t brute_force_cap = 20;
};

struct SolveMetrics {
  std::chrono::nanoseconds gb_time{0};
  std::chrono::nanoseconds total_time{0};
  /// One entry per Groebner computation.
  std::vector<SystemStats> systems;
  std::vector<BuchbergerStats> buchberger;
  /// Feasible points found before the Pareto filter (decision space).
  std::set<Point> candidates;
};

/// Binary problems only. Problems with bounds are binarized by `solve`.
ParetoResult solve_alg1(const ProblemInstance& p, const SolveOptions& options = {}, SolveMetrics* metrics = nullptr);

/// `kind` is kkt (KKT with the NR supplement), fj or mofj.
ParetoResult solve_via_conditions(const ProblemInstance& p, SystemKind kind, const SolveOptions& options = {},
                                  SolveMetrics* metrics = nullptr);

/// Exhaustive enumeration of the binary cube, or of the integer box when bounds are present.
ParetoResult brute_force(const ProblemInstance& p, const SolveOptions& options = {}, SolveMetrics* metrics = nullptr);

/// Dispatches by algorithm name; bounded problems are binarized and decoded back.
ParetoResult solve(const ProblemInstance& p, Algorithm algorithm, const SolveOptions& options = {},
                   SolveMetrics* metrics = nullptr);

}  // namespace mopip
