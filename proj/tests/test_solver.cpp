#include "doctest.h"
#include "test_support.hpp"

#include "mopip/roots.hpp"
#include "mopip/solver.hpp"
#include "mopip/split.hpp"

#include <random>

using namespace mopip;
using mopip::testing::P;

namespace {

Point pt(std::initializer_list<int> v) {
  Point out;
  for (int x : v) out.emplace_back(x);
  return out;
}

ProblemInstance small_knapsack() {
  auto ctx = make_decision_context(2);
  return make_problem(ctx, {P(ctx, "3*x1 + x2"), P(ctx, "x1 + 2*x2")}, {P(ctx, "1 - x1 - x2")});
}

std::set<Rational> roots_of(const std::string& text) {
  auto ctx = make_decision_context(1);
  return rational_roots(P(ctx, text));
}

// Independent oracle: plain loop over the cube, domination by pairwise comparison.
std::set<Point> oracle_front(const ProblemInstance& p) {
  std::vector<Point> values;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.n); ++mask) {
    Point x;
    for (std::size_t i = 0; i < p.n; ++i) x.emplace_back(static_cast<int>((mask >> i) & 1U));
    bool ok = true;
    for (const auto& g : p.inequalities) ok = ok && evaluate_at(g, x) <= 0;
    for (const auto& h : p.equalities) ok = ok && evaluate_at(h, x) == 0;
    if (!ok) continue;
    Point y;
    for (const auto& f : p.objectives) y.push_back(evaluate_at(f, x));
    values.push_back(y);
  }
  std::set<Point> front;
  for (const auto& a : values) {
    bool dominated = false;
    for (const auto& b : values) {
      bool le = true;
      for (std::size_t i = 0; i < a.size(); ++i) le = le && b[i] <= a[i];
      dominated = dominated || (le && a != b);
    }
    if (!dominated) front.insert(a);
  }
  return front;
}

}  // namespace

TEST_CASE("rational_roots") {
  CHECK(roots_of("x1^2 - 5*x1 + 4") == std::set<Rational>{Rational(1), Rational(4)});
  CHECK(roots_of("x1^2 - x1") == std::set<Rational>{Rational(0), Rational(1)});
  CHECK(roots_of("2*x1 - 3") == std::set<Rational>{Rational(3, 2)});
  CHECK(roots_of("x1^2 + 1").empty());
  {
    auto ctx = make_decision_context(1);
    auto p = pow(P(ctx, "x1 - 2"), 3) * pow(P(ctx, "3*x1 + 1"), 2) * pow(P(ctx, "x1"), 4);
    CHECK(rational_roots(p) == std::set<Rational>{Rational(2), Rational(-1, 3), Rational(0)});
  }
  CHECK(roots_of("1/2*x1^2 - 1/8") == std::set<Rational>{Rational(1, 2), Rational(-1, 2)});
  CHECK(roots_of("7").empty());
  auto ctx = make_decision_context(2);
  CHECK_THROWS_AS(rational_roots(Polynomial(ctx)), std::domain_error);
  CHECK_THROWS_AS(rational_roots(P(ctx, "x1*x2")), std::invalid_argument);
}

TEST_CASE("rational_roots on products of random linear factors") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-400, 400);
  std::uniform_int_distribution<int> den(1, 6);
  auto ctx = make_decision_context(1);
  auto x = Polynomial::variable(ctx, 0);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<Rational> expected;
    Polynomial p = P(ctx, "x1^2 + 3");  // irreducible cofactor with no rational root
    for (int f = 0; f < 1 + trial % 7; ++f) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      expected.insert(r);
      p = p * (x - Polynomial::constant(ctx, r));
    }
    CHECK(rational_roots(p) == expected);
  }
}

TEST_CASE("extend") {
  auto ctx = make_decision_context(2);
  auto p = make_problem(ctx, {P(ctx, "x1 + 3*x2")}, {});
  SUBCASE("y from a quadratic") {
    auto ts = build_alg1(make_problem(ctx, {P(ctx, "3*x1 + 1")}, {P(ctx, "x2 - 1")}));
    GroebnerBasis G{ts.context, {P(ts.context, "y1^2 - 5*y1 + 4")}, true};
    PartialSolution empty(ts.context->size());
    empty.set(ts.slack_vars[0], Rational(0));
    auto vals = extend(ts, G, empty, ts.objective_vars[0]);
    CHECK(vals == std::vector<Rational>{Rational(1), Rational(4)});
  }
  SUBCASE("negative slack is rejected") {
    auto ts = build_alg1(make_problem(ctx, {P(ctx, "x1")}, {P(ctx, "x2 - 1")}));
    GroebnerBasis G{ts.context, {P(ts.context, "w1 + 3")}, true};
    CHECK(extend(ts, G, PartialSolution(ts.context->size()), ts.slack_vars[0]).empty());
  }
  SUBCASE("intersection of root sets") {
    auto ts = build_alg1(p);
    GroebnerBasis G{ts.context, {P(ts.context, "x2^2 - x2"), P(ts.context, "x2 - 1")}, true};
    PartialSolution partial(ts.context->size());
    partial.set(ts.objective_vars[0], Rational(3));
    CHECK(extend(ts, G, partial, ts.decision_vars[1]) == std::vector<Rational>{Rational(1)});
  }
  SUBCASE("vanishing specializations") {
    auto ts = build_alg1(p);
    GroebnerBasis G{ts.context, {P(ts.context, "x2^2 - x2")}, true};
    PartialSolution partial(ts.context->size());
    CHECK(extend(ts, G, partial, ts.decision_vars[1]) == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK_THROWS_AS(extend(ts, G, partial, ts.objective_vars[0]), ExtensionError);
  }
  SUBCASE("non-binary decision value is a defect") {
    auto ts = build_alg1(p);
    GroebnerBasis G{ts.context, {P(ts.context, "x2 - 2")}, true};
    CHECK_THROWS_AS(extend(ts, G, PartialSolution(ts.context->size()), ts.decision_vars[1]), ModelDefect);
  }
}

TEST_CASE("enumerate_variety") {
  auto p = small_knapsack();
  auto ts = build_alg1(p);
  auto G = buchberger(ts.generators);
  std::set<Point> omega;
  for (const auto& s : enumerate_variety(ts, G, depth_through(ts, VarRole::objective))) {
    omega.insert({s.values[ts.objective_vars[0]], s.values[ts.objective_vars[1]]});
  }
  CHECK(omega == std::set<Point>{pt({1, 2}), pt({3, 1}), pt({4, 3})});

  GroebnerBasis unit{ts.context, {Polynomial::constant(ts.context, Rational(1))}, true};
  CHECK(enumerate_variety(ts, unit, ts.solve_order.size()).empty());

  auto ctx = make_decision_context(2);
  auto single = build_alg1(make_problem(ctx, {P(ctx, "x1")}, {}, {P(ctx, "x1 - 1"), P(ctx, "x2")}));
  auto full = enumerate_variety(single, buchberger(single.generators), single.solve_order.size());
  REQUIRE(full.size() == 1);
  CHECK(full[0].values == pt({1, 0, 1}));
}

TEST_CASE("pareto_filter") {
  CHECK(pareto_filter({pt({1, 2}), pt({3, 1}), pt({4, 3})}) == std::set<Point>{pt({1, 2}), pt({3, 1})});
  CHECK(pareto_filter({pt({1, 1})}) == std::set<Point>{pt({1, 1})});
  CHECK(pareto_filter({pt({2, 5}), pt({2, 4})}) == std::set<Point>{pt({2, 4})});
  CHECK(pareto_filter({}).empty());
}

TEST_CASE("pipelines on the two-variable knapsack") {
  const auto p = small_knapsack();
  for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl, Algorithm::fj, Algorithm::fj_sl, Algorithm::mofj,
                 Algorithm::brute}) {
    CAPTURE(algorithm_name(a));
    auto r = solve(p, a);
    CHECK(r.status == SolveStatus::solved);
    CHECK(r.nondominated == std::set<Point>{pt({1, 2}), pt({3, 1})});
    CHECK(r.efficient_set() == std::set<Point>{pt({0, 1}), pt({1, 0})});
  }
}

TEST_CASE("small pipeline examples") {
  auto ctx = make_decision_context(2);
  auto free_min = make_problem(ctx, {P(ctx, "x1"), P(ctx, "x2")});
  auto r = solve_alg1(free_min);
  CHECK(r.nondominated == std::set<Point>{pt({0, 0})});
  CHECK(r.efficient_set() == std::set<Point>{pt({0, 0})});

  auto infeasible = make_problem(ctx, {P(ctx, "x1"), P(ctx, "x2")}, {P(ctx, "3 - x1 - x2")});
  for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::fj, Algorithm::mofj, Algorithm::brute}) {
    CHECK(solve(infeasible, a).status == SolveStatus::infeasible);
  }

  auto one = make_decision_context(1);
  auto both = make_problem(one, {P(one, "x1"), P(one, "1 - x1")});
  auto kkt = solve_via_conditions(both, SystemKind::kkt);
  CHECK(kkt.efficient_set() == std::set<Point>{pt({0}), pt({1})});

  auto single = make_problem(ctx, {P(ctx, "2*x1 - x2")}, {}, {P(ctx, "x1 - x2")});
  CHECK(brute_force(single).nondominated == std::set<Point>{pt({0})});
}

TEST_CASE("ties keep every preimage") {
  auto ctx = make_decision_context(2);
  auto p = make_problem(ctx, {P(ctx, "x1 + x2"), P(ctx, "2 - x1 - x2")});
  for (auto a : {Algorithm::alg1, Algorithm::mofj, Algorithm::brute}) {
    auto r = solve(p, a);
    CHECK(r.efficient.size() == 4);
  }
}

TEST_CASE("feasibility and objective evaluation") {
  auto p = small_knapsack();
  CHECK(check_feasible(pt({1, 0}), p));
  CHECK(evaluate_objectives(pt({1, 0}), p) == pt({3, 1}));
  CHECK_FALSE(check_feasible(pt({0, 0}), p));
  CHECK_THROWS_AS(check_feasible(pt({0}), p), ProblemError);
  auto ctx = make_decision_context(2);
  auto eq = make_problem(ctx, {P(ctx, "x1")}, {}, {P(ctx, "x1 - x2")});
  CHECK(check_feasible(pt({1, 1}), eq));
}

TEST_CASE("pipelines agree with an independent oracle on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    auto ctx = make_decision_context(n);
    std::vector<Polynomial> f;
    for (int i = 0; i < 2; ++i) f.push_back(mopip::testing::random_polynomial(rng, ctx, 2, 4));
    Polynomial g = Polynomial::constant(ctx, Rational(coeff(rng)));
    for (std::size_t i = 0; i < n; ++i) g = g + Rational(coeff(rng)) * Polynomial::variable(ctx, i);
    auto p = make_problem(ctx, f, {g});
    const auto expected = oracle_front(p);
    for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl, Algorithm::fj, Algorithm::fj_sl, Algorithm::mofj,
                   Algorithm::brute}) {
      CAPTURE(trial);
      CAPTURE(algorithm_name(a));
      SolveMetrics metrics;
      auto r = solve(p, a, {}, &metrics);
      CHECK(r.nondominated == expected);
      for (const auto& e : r.efficient) {
        CHECK(check_feasible(e.x, p));
        CHECK(evaluate_objectives(e.x, p) == e.y);
      }
      CHECK(r.status == (expected.empty() ? SolveStatus::infeasible : SolveStatus::solved));
    }
  }
}

TEST_CASE("split and direct engines give the same bases") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t n = 2 + trial % 2;
    auto ctx = make_decision_context(n);
    std::vector<Polynomial> f;
    for (int i = 0; i < 2; ++i) f.push_back(mopip::testing::random_polynomial(rng, ctx, 2, 3));
    Polynomial g = Polynomial::constant(ctx, Rational(coeff(rng)));
    for (std::size_t i = 0; i < n; ++i) g = g + Rational(coeff(rng)) * Polynomial::variable(ctx, i);
    std::vector<Polynomial> h;
    if (trial % 4 == 3) h.push_back(Polynomial::variable(ctx, 0) - Polynomial::variable(ctx, 1));
    auto p = make_problem(ctx, f, {g}, h);
    CAPTURE(trial);
    for (auto mode : {SlackMode::linear, SlackMode::keep}) {
      auto ts = build_alg1(p, mode);
      CHECK(dump(split_basis(ts)) == dump(buchberger(ts.generators)));
    }
    for (auto ts : {build_kkt(p), build_nr(p), build_mofj(p), build_kkt(p, SlackMode::linear)}) {
      CHECK(dump(decision_basis(ts)) == dump(elimination_subset(buchberger(ts.generators), ts.decision_vars)));
    }
    if (n == 2) {
      auto ts = build_fj(p);
      CHECK(dump(decision_basis(ts)) == dump(elimination_subset(buchberger(ts.generators), ts.decision_vars)));
    }
    SolveOptions direct;
    direct.engine = GroebnerEngine::direct;
    for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::mofj}) {
      auto r1 = solve(p, a);
      auto r2 = solve(p, a, direct);
      CHECK(r1.nondominated == r2.nondominated);
      CHECK(r1.efficient_set() == r2.efficient_set());
    }
  }
}
