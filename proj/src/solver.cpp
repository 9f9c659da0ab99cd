#include "mopip/solver.hpp"

#include "mopip/roots.hpp"
#include "mopip/split.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace mopip {

namespace {

using Clock = std::chrono::steady_clock;

// Coefficients (low to high) of g in variable v after substituting the assigned values.
std::vector<Rational> specialize(const Polynomial& g, const PartialSolution& s, std::size_t v) {
  std::vector<Rational> coeffs(g.degree_in(v) + 1, Rational(0));
  for (const auto& t : g.terms()) {
    Rational c = t.coeff;
    for (std::size_t i = 0; i < t.monomial.size() && sgn(c) != 0; ++i) {
      const unsigned e = t.monomial[i];
      if (e == 0 || i == v) continue;
      Rational power(1);
      for (unsigned r = 0; r < e; ++r) power *= s.values[i];
      c *= power;
    }
    coeffs[t.monomial[v]] += c;
  }
  return dense::normalize(std::move(coeffs));
}

std::vector<std::size_t> relevant_elements(const GroebnerBasis& G, std::uint64_t assigned, std::size_t v) {
  const std::uint64_t bit = std::uint64_t{1} << v;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < G.basis.size(); ++i) {
    const std::uint64_t sup = G.basis[i].support();
    if ((sup & bit) != 0 && (sup & ~(assigned | bit)) == 0) out.push_back(i);
  }
  return out;
}

bool is_decision(const TransformedSystem& ts, std::size_t v) {
  return std::find(ts.decision_vars.begin(), ts.decision_vars.end(), v) != ts.decision_vars.end();
}

bool is_filtered(const TransformedSystem& ts, std::size_t v) {
  return std::find(ts.sign_filters.begin(), ts.sign_filters.end(), v) != ts.sign_filters.end();
}

std::vector<Rational> extend_with(const TransformedSystem& ts, const GroebnerBasis& G, const PartialSolution& partial,
                                  std::size_t v, std::span<const std::size_t> elements) {
  std::optional<std::vector<Rational>> roots;
  std::vector<std::vector<Rational>> pending;
  for (auto idx : elements) {
    auto coeffs = specialize(G.basis[idx], partial, v);
    if (coeffs.empty()) continue;
    if (coeffs.size() == 1) return {};
    if (!roots) {
      auto found = rational_roots(coeffs);
      roots.emplace(found.begin(), found.end());
    } else {
      pending.push_back(std::move(coeffs));
    }
  }
  const bool decision = is_decision(ts, v);
  if (!roots) {
    if (!decision) {
      throw ExtensionError("variable " + (*ts.context)[v].name + " is not determined by the basis");
    }
    roots.emplace(std::vector<Rational>{Rational(0), Rational(1)});
  }
  std::vector<Rational> out;
  for (auto& r : *roots) {
    bool keep = std::all_of(pending.begin(), pending.end(),
                            [&](const std::vector<Rational>& c) { return sgn(dense::evaluate(c, r)) == 0; });
    if (!keep) continue;
    if (decision && r != 0 && r != 1) {
      throw ModelDefect("decision variable " + (*ts.context)[v].name + " solved to " + to_short_string(r));
    }
    if (is_filtered(ts, v) && sgn(r) < 0) continue;
    out.push_back(r);
  }
  return out;
}

Point pick(const Point& values, std::span<const std::size_t> vars) {
  Point out;
  out.reserve(vars.size());
  for (auto i : vars) out.push_back(values[i]);
  return out;
}

template <class F>
auto timed(std::chrono::nanoseconds& acc, F&& f) {
  const auto start = Clock::now();
  auto result = f();
  acc += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return result;
}

// Full reduced basis of a zero-dimensional system.
GroebnerBasis compute_basis(const TransformedSystem& ts, const SolveOptions& options, SolveMetrics& metrics) {
  BuchbergerStats stats;
  metrics.systems.push_back(system_stats(ts));
  auto G = timed(metrics.gb_time, [&] {
    return options.engine == GroebnerEngine::direct ? buchberger(ts.generators, options.buchberger, &stats)
                                                     : split_basis(ts, options.buchberger, &stats);
  });
  metrics.buchberger.push_back(stats);
  return G;
}

// Basis of the elimination ideal on the decision variables.
GroebnerBasis compute_decision_basis(const TransformedSystem& ts, const SolveOptions& options, SolveMetrics& metrics) {
  BuchbergerStats stats;
  metrics.systems.push_back(system_stats(ts));
  auto G = timed(metrics.gb_time, [&] {
    if (options.engine == GroebnerEngine::split) return decision_basis(ts, options.buchberger, &stats);
    return elimination_subset(buchberger(ts.generators, options.buchberger, &stats), ts.decision_vars);
  });
  metrics.buchberger.push_back(stats);
  return G;
}

// Pareto filter over feasible (x, y) pairs.
ParetoResult assemble(const std::vector<std::pair<Point, Point>>& feasible, const std::map<Point, Provenance>& source) {
  ParetoResult result;
  std::set<Point> omega;
  for (const auto& [x, y] : feasible) omega.insert(y);
  result.nondominated = pareto_filter(omega);
  std::map<Point, EfficientPoint> chosen;
  for (const auto& [x, y] : feasible) {
    if (result.nondominated.contains(y)) chosen.try_emplace(x, EfficientPoint{x, y, source.at(x)});
  }
  for (auto& [x, e] : chosen) result.efficient.push_back(std::move(e));
  result.status = result.nondominated.empty() ? SolveStatus::infeasible : SolveStatus::solved;
  return result;
}

void check_objectives(const ProblemInstance& p, const Point& x, const Point& y) {
  if (!check_feasible(x, p)) throw ModelDefect("efficient point violates the constraints");
  if (evaluate_objectives(x, p) != y) throw ModelDefect("objective variables disagree with the objectives");
}

struct MetricsScope {
  SolveMetrics local;
  SolveMetrics* out;
  Clock::time_point start = Clock::now();

  explicit MetricsScope(SolveMetrics* m) : out(m) {}
  SolveMetrics& get() { return out ? *out : local; }
  ~MetricsScope() {
    get().total_time += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  }
};

}  // namespace

std::vector<Rational> extend(const TransformedSystem& ts, const GroebnerBasis& G, const PartialSolution& partial,
                             std::size_t v) {
  const auto elements = relevant_elements(G, partial.assigned, v);
  return extend_with(ts, G, partial, v, elements);
}

std::size_t depth_through(const TransformedSystem& ts, VarRole role) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < ts.solve_order.size(); ++i) {
    if ((*ts.context)[ts.solve_order[i]].role == role) depth = i + 1;
  }
  return depth;
}

std::vector<PartialSolution> enumerate_from(const TransformedSystem& ts, const GroebnerBasis& G,
                                            std::vector<PartialSolution> start, std::size_t depth) {
  if (depth > ts.solve_order.size()) throw std::invalid_argument("enumeration depth beyond the solve order");
  std::vector<PartialSolution> frontier = std::move(start);
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    const std::size_t v = ts.solve_order[level];
    if (frontier.front().has(v)) continue;
    // Every partial at this level has the same variables assigned.
    const auto elements = relevant_elements(G, frontier.front().assigned, v);
    std::vector<PartialSolution> next;
    for (const auto& partial : frontier) {
      for (auto& value : extend_with(ts, G, partial, v, elements)) {
        PartialSolution grown = partial;
        grown.set(v, std::move(value));
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

std::vector<PartialSolution> enumerate_variety(const TransformedSystem& ts, const GroebnerBasis& G, std::size_t depth) {
  if (G.is_unit()) return {};
  return enumerate_from(ts, G, {PartialSolution(ts.context->size())}, depth);
}

bool dominates(const Point& a, const Point& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

std::set<Point> pareto_filter(const std::set<Point>& points) {
  std::set<Point> out;
  for (const auto& p : points) {
    bool dominated = std::any_of(points.begin(), points.end(), [&](const Point& q) { return dominates(q, p); });
    if (!dominated) out.insert(p);
  }
  return out;
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::alg1: return "alg1";
    case Algorithm::kkt: return "kkt";
    case Algorithm::kkt_sl: return "kkt_sl";
    case Algorithm::fj: return "fj";
    case Algorithm::fj_sl: return "fj_sl";
    case Algorithm::mofj: return "mofj";
    case Algorithm::brute: return "brute";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl, Algorithm::fj, Algorithm::fj_sl, Algorithm::mofj,
                 Algorithm::brute}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::alg1: return "ALG1";
    case Provenance::kkt: return "KKT";
    case Provenance::nr: return "NR";
    case Provenance::fj: return "FJ";
    case Provenance::mofj: return "MOFJ";
    case Provenance::brute: return "BRUTE";
  }
  return "?";
}

std::set<Point> ParetoResult::efficient_set() const {
  std::set<Point> out;
  for (const auto& e : efficient) out.insert(e.x);
  return out;
}

ParetoResult solve_alg1(const ProblemInstance& p, const SolveOptions& options, SolveMetrics* metrics) {
  MetricsScope scope(metrics);
  auto& m = scope.get();
  const SlackMode mode = options.slack_mode.value_or(SlackMode::linear);
  const auto ts = build_alg1(p, mode);
  const auto G = compute_basis(ts, options, m);
  std::vector<std::pair<Point, Point>> feasible;
  std::map<Point, Provenance> source;
  if (mode == SlackMode::linear) {
    // Objective vectors come from the slack and y blocks alone; x is recovered for efficient vectors only.
    auto partials = enumerate_variety(ts, G, depth_through(ts, VarRole::objective));
    std::set<Point> omega;
    for (const auto& s : partials) omega.insert(pick(s.values, ts.objective_vars));
    const auto front = pareto_filter(omega);
    std::erase_if(partials, [&](const PartialSolution& s) { return !front.contains(pick(s.values, ts.objective_vars)); });
    for (const auto& s : enumerate_from(ts, G, std::move(partials), ts.solve_order.size())) {
      feasible.emplace_back(pick(s.values, ts.decision_vars), pick(s.values, ts.objective_vars));
    }
  } else {
    for (const auto& s : enumerate_variety(ts, G, ts.solve_order.size())) {
      Point x = pick(s.values, ts.decision_vars);
      if (check_feasible(x, p)) feasible.emplace_back(std::move(x), pick(s.values, ts.objective_vars));
    }
  }
  for (const auto& [x, y] : feasible) {
    check_objectives(p, x, y);
    source.emplace(x, Provenance::alg1);
    m.candidates.insert(x);
  }
  return assemble(feasible, source);
}

ParetoResult solve_via_conditions(const ProblemInstance& p, SystemKind kind, const SolveOptions& options,
                                  SolveMetrics* metrics) {
  MetricsScope scope(metrics);
  auto& m = scope.get();
  const SlackMode mode = options.slack_mode.value_or(SlackMode::keep);
  std::vector<SystemKind> kinds;
  switch (kind) {
    case SystemKind::kkt: kinds = {SystemKind::kkt, SystemKind::nr}; break;
    case SystemKind::fj: kinds = {SystemKind::fj}; break;
    case SystemKind::mofj: kinds = {SystemKind::mofj}; break;
    default: throw std::invalid_argument("solve_via_conditions takes kkt, fj or mofj");
  }
  std::map<Point, Provenance> source;
  for (auto k : kinds) {
    TransformedSystem ts = [&] {
      switch (k) {
        case SystemKind::kkt: return build_kkt(p, mode);
        case SystemKind::nr: return build_nr(p, mode);
        case SystemKind::fj: return build_fj(p, mode);
        default: return build_mofj(p, mode);
      }
    }();
    const auto Gx = compute_decision_basis(ts, options, m);
    if (Gx.is_unit()) continue;
    const Provenance tag = k == SystemKind::kkt ? Provenance::kkt
                           : k == SystemKind::nr ? Provenance::nr
                           : k == SystemKind::fj ? Provenance::fj
                                                 : Provenance::mofj;
    for (const auto& s : enumerate_variety(ts, Gx, ts.decision_vars.size())) {
      source.try_emplace(pick(s.values, ts.decision_vars), tag);
    }
  }
  std::vector<std::pair<Point, Point>> feasible;
  for (const auto& [x, tag] : source) {
    if (!check_feasible(x, p)) continue;
    feasible.emplace_back(x, evaluate_objectives(x, p));
    m.candidates.insert(x);
  }
  return assemble(feasible, source);
}

ParetoResult brute_force(const ProblemInstance& p, const SolveOptions& options, SolveMetrics* metrics) {
  MetricsScope scope(metrics);
  auto& m = scope.get();
  if (p.slack_count() != 0) throw std::invalid_argument("brute force expects a problem without slacks");
  std::vector<std::uint64_t> upper(p.n, 1);
  if (p.bounds) upper = *p.bounds;
  std::size_t bits = 0;
  for (auto u : upper) bits += binary_width(u);
  if (bits > options.brute_force_cap) {
    throw std::invalid_argument("brute force limited to " + std::to_string(options.brute_force_cap) + " binary variables");
  }
  std::vector<std::pair<Point, Point>> feasible;
  std::map<Point, Provenance> source;
  std::vector<std::uint64_t> digits(p.n, 0);
  Point x(p.n, Rational(0));
  while (true) {
    if (check_feasible(x, p)) {
      feasible.emplace_back(x, evaluate_objectives(x, p));
      source.emplace(x, Provenance::brute);
      m.candidates.insert(x);
    }
    std::size_t i = 0;
    while (i < p.n && digits[i] == upper[i]) {
      digits[i] = 0;
      x[i] = 0;
      ++i;
    }
    if (i == p.n) break;
    ++digits[i];
    x[i] = Rational(static_cast<unsigned long>(digits[i]));
  }
  return assemble(feasible, source);
}

namespace {

ParetoResult dispatch(const ProblemInstance& p, Algorithm algorithm, const SolveOptions& options, SolveMetrics* metrics) {
  SolveOptions opts = options;
  switch (algorithm) {
    case Algorithm::alg1: return solve_alg1(p, opts, metrics);
    case Algorithm::kkt: return solve_via_conditions(p, SystemKind::kkt, opts, metrics);
    case Algorithm::kkt_sl:
      opts.slack_mode = SlackMode::linear;
      return solve_via_conditions(p, SystemKind::kkt, opts, metrics);
    case Algorithm::fj: return solve_via_conditions(p, SystemKind::fj, opts, metrics);
    case Algorithm::fj_sl:
      opts.slack_mode = SlackMode::linear;
      return solve_via_conditions(p, SystemKind::fj, opts, metrics);
    case Algorithm::mofj: return solve_via_conditions(p, SystemKind::mofj, opts, metrics);
    case Algorithm::brute: return brute_force(p, opts, metrics);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace

ParetoResult solve(const ProblemInstance& p, Algorithm algorithm, const SolveOptions& options, SolveMetrics* metrics) {
  if (p.is_binary() || algorithm == Algorithm::brute) return dispatch(p, algorithm, options, metrics);
  const auto binary = binarize(p);
  SolveMetrics local;
  SolveMetrics& m = metrics ? *metrics : local;
  auto inner = dispatch(binary, algorithm, options, &m);
  std::set<Point> decoded_candidates;
  for (const auto& c : m.candidates) decoded_candidates.insert(decode_binarized(c, *p.bounds));
  m.candidates = std::move(decoded_candidates);
  std::map<Point, EfficientPoint> efficient;
  for (const auto& e : inner.efficient) {
    Point x = decode_binarized(e.x, *p.bounds);
    efficient.try_emplace(x, EfficientPoint{x, e.y, e.source});
  }
  inner.efficient.clear();
  for (auto& [x, e] : efficient) inner.efficient.push_back(std::move(e));
  return inner;
}

}  // namespace mopip
