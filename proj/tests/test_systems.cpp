#include "doctest.h"
#include "test_support.hpp"

#include "mopip/solver.hpp"
#include "mopip/systems.hpp"

#include <algorithm>

using namespace mopip;
using mopip::testing::P;

namespace {

// min (3x1 + x2, x1 + 2x2)  s.t.  1 - x1 - x2 <= 0
ProblemInstance small_knapsack() {
  auto ctx = make_decision_context(2);
  return make_problem(ctx, {P(ctx, "3*x1 + x2"), P(ctx, "x1 + 2*x2")}, {P(ctx, "1 - x1 - x2")});
}

ProblemInstance quadratic_objectives() {
  auto ctx = make_decision_context(2);
  return make_problem(ctx, {P(ctx, "x1*x2 + x1"), P(ctx, "x2^2 - x1")}, {P(ctx, "1 - x1 - x2")});
}

std::vector<std::string> names(const ContextPtr& ctx) {
  std::vector<std::string> out;
  for (const auto& v : ctx->variables()) out.push_back(v.name);
  return out;
}

}  // namespace

TEST_CASE("binarize substitutes binary expansions") {
  auto ctx = make_decision_context(1);
  SUBCASE("u = 1 keeps one bit") {
    auto p = make_problem(ctx, {P(ctx, "x1")}, {}, {}, std::vector<std::uint64_t>{1});
    auto b = binarize(p);
    CHECK(b.n == 1);
    CHECK(to_string(b.objectives[0]) == "z1_0");
    CHECK(b.inequalities.empty());
  }
  SUBCASE("u = 5 uses three bits and a bound constraint") {
    auto p = make_problem(ctx, {P(ctx, "x1")}, {}, {}, std::vector<std::uint64_t>{5});
    auto b = binarize(p);
    CHECK(b.n == 3);
    CHECK(b.objectives[0] == P(b.context, "z1_0 + 2*z1_1 + 4*z1_2"));
    REQUIRE(b.inequalities.size() == 1);
    CHECK(b.inequalities[0] == P(b.context, "z1_0 + 2*z1_1 + 4*z1_2 - 5"));
  }
  SUBCASE("x1^2 with u = 3 expands the square") {
    auto p = make_problem(ctx, {P(ctx, "x1^2")}, {}, {}, std::vector<std::uint64_t>{3});
    auto b = binarize(p);
    CHECK(b.objectives[0] == P(b.context, "z1_0^2 + 4*z1_0*z1_1 + 4*z1_1^2"));
    CHECK(b.inequalities.empty());
  }
  SUBCASE("missing bounds") {
    auto p = make_problem(ctx, {P(ctx, "x1")});
    CHECK_THROWS_AS(binarize(p), ProblemError);
  }
}

TEST_CASE("binarize preserves the objective values of the integer box") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto ctx = make_decision_context(n);
    std::uniform_int_distribution<std::uint64_t> bound(1, 7);
    std::vector<std::uint64_t> u(n);
    for (auto& b : u) b = bound(rng);
    auto f1 = mopip::testing::random_polynomial(rng, ctx, 2, 3);
    auto f2 = mopip::testing::random_polynomial(rng, ctx, 2, 3);
    auto g = mopip::testing::random_polynomial(rng, ctx, 1, 3);
    auto p = make_problem(ctx, {f1, f2}, {g}, {}, u);
    auto on_box = brute_force(p);
    auto on_bits = brute_force(binarize(p));
    CHECK(on_box.nondominated == on_bits.nondominated);
    CHECK(on_box.status == on_bits.status);
  }
}

TEST_CASE("decode_binarized") {
  std::vector<Rational> bits{Rational(1), Rational(0), Rational(1), Rational(1)};
  std::vector<std::uint64_t> u{5, 1};
  CHECK(decode_binarized(bits, u) == std::vector<Rational>{Rational(5), Rational(1)});
  CHECK_THROWS_AS(decode_binarized(std::span(bits).first(3), u), ProblemError);
}

TEST_CASE("slack_transform") {
  auto p = small_knapsack();
  auto q = slack_transform(p, SlackMode::linear);
  CHECK(q.inequalities.empty());
  REQUIRE(q.equalities.size() == 1);
  CHECK(q.equalities[0] == P(q.context, "1 - x1 - x2 + w1"));
  CHECK(q.context->block(VarRole::slack).size() == 1);
  CHECK(slack_transform(p, SlackMode::keep) == p);

  auto ctx = make_decision_context(2);
  auto none = make_problem(ctx, {P(ctx, "x1")});
  CHECK(slack_transform(none, SlackMode::linear) == none);
  auto two = make_problem(ctx, {P(ctx, "x1")}, {P(ctx, "x1 - 1"), P(ctx, "x2 - 1")});
  CHECK(names(slack_transform(two, SlackMode::linear).context) == std::vector<std::string>{"x1", "x2", "w1", "w2"});
}

TEST_CASE("linear slacks keep the feasible set of small knapsacks") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-10, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    auto ctx = make_decision_context(n);
    Polynomial g = Polynomial::constant(ctx, Rational(coeff(rng)));
    for (std::size_t i = 0; i < n; ++i) g = g + Rational(coeff(rng)) * Polynomial::variable(ctx, i);
    auto p = make_problem(ctx, {Polynomial::variable(ctx, 0)}, {g});
    auto q = slack_transform(p, SlackMode::linear);
    for (std::uint64_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<Rational> x;
      for (std::size_t i = 0; i < n; ++i) x.emplace_back(static_cast<int>((mask >> i) & 1U));
      // The slack equation fixes w; it has a nonnegative solution iff g(x) <= 0.
      const Rational w = -evaluate_at(g, x);
      auto full = x;
      full.push_back(w);
      CHECK(check_feasible(x, p) == (sgn(w) >= 0 && check_feasible(full, q)));
    }
  }
}

TEST_CASE("lower_bound") {
  auto ctx = make_decision_context(2);
  CHECK(lower_bound(P(ctx, "3*x1 + x2")) == 0);
  CHECK(lower_bound(P(ctx, "-2*x1*x2 + x1")) == -2);
  CHECK(lower_bound(P(ctx, "-x1 - x2 - 5")) == -7);
}

TEST_CASE("alg1 system") {
  auto ts = build_alg1(small_knapsack());
  CHECK(system_stats(ts) == SystemStats{5, 5, 2});
  CHECK(names(ts.context) == std::vector<std::string>{"x1", "x2", "y1", "y2", "w1"});
  CHECK(ts.sign_filters == std::vector<std::size_t>{4});

  auto ctx = make_decision_context(1);
  auto tiny = build_alg1(make_problem(ctx, {P(ctx, "x1")}));
  std::vector<Polynomial> expected{P(tiny.context, "y1 - x1"), P(tiny.context, "x1^2 - x1")};
  CHECK(std::ranges::equal(tiny.generators.generators(), expected));

  // f = 0 keeps the zero objective generator y1.
  auto empty = build_alg1(make_problem(ctx, {Polynomial(ctx)}));
  CHECK(system_stats(empty) == SystemStats{2, 2, 2});

  auto infeasible = build_alg1(make_problem(ctx, {P(ctx, "x1")}, {}, {P(ctx, "x1 - 2")}));
  CHECK(buchberger(infeasible.generators).is_unit());
}

TEST_CASE("condition system sizes and degrees") {
  const auto p = small_knapsack();
  CHECK(system_stats(build_kkt(p)) == SystemStats{10, 8, 3});
  // sum nu, 2 stationarity, 1 complementarity, 2 binary, normalization
  CHECK(system_stats(build_nr(p)).n_gens == 7);
  CHECK(system_stats(build_fj(p)).n_vars == 11);
  CHECK(system_stats(build_fj(p)).n_gens == 9);
  CHECK(system_stats(build_mofj(p)) == SystemStats{7, 6, 2});
  CHECK(system_stats(build_fj(quadratic_objectives())).max_deg == 4);

  auto kkt = build_kkt(p);
  CHECK(names(kkt.context) ==
        std::vector<std::string>{"beta1", "beta2", "nu1", "nu2", "lambda1", "omega1", "omega2", "gamma", "x1", "x2"});
  auto fj = build_fj(p);
  CHECK(names(fj.context)[2] == "lambda0");
  auto sl = build_kkt(p, SlackMode::linear);
  CHECK(names(sl.context).back() == "x2");
  CHECK(sl.context->block(VarRole::slack).size() == 1);
}

TEST_CASE("NR normalization without constraints is the sum of squared betas") {
  auto ctx = make_decision_context(2);
  auto nr = build_nr(make_problem(ctx, {P(ctx, "x1"), P(ctx, "x2")}));
  auto gens = nr.generators.generators();
  CHECK(gens.back() == P(nr.context, "beta1^2 + beta2^2 - 1"));
}

TEST_CASE("builders respect context and solve order") {
  const auto p = quadratic_objectives();
  for (auto ts : {build_alg1(p), build_kkt(p), build_nr(p), build_fj(p), build_mofj(p), build_fj(p, SlackMode::linear)}) {
    for (const auto& g : ts.generators.generators()) CHECK(same_context(g.context(), ts.context));
    REQUIRE(ts.solve_order.size() == ts.context->size());
    for (std::size_t i = 0; i < ts.solve_order.size(); ++i) CHECK(ts.solve_order[i] == ts.context->size() - 1 - i);
    for (auto v : ts.sign_filters) {
      auto role = (*ts.context)[v].role;
      CHECK((role == VarRole::nu || role == VarRole::lambda || role == VarRole::lambda0 || role == VarRole::slack));
    }
  }
}
