#pragma once

#include "mopip/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mopip {

/// min (f_1(x), ..., f_k(x))  s.t.  g_j(x) <= 0,  h_r(x) = 0.
///
/// Decision variables occupy context positions 0..n-1. After a linear slack
/// transform the context also carries slack variables after them. Without
/// bounds every decision variable is binary; with bounds x_i ranges over
/// {0, ..., u_i}.
struct ProblemInstance {
  ContextPtr context;
  std::size_t n = 0;
  std::vector<Polynomial> objectives;
  std::vector<Polynomial> inequalities;
  std::vector<Polynomial> equalities;
  std::optional<std::vector<std::uint64_t>> bounds;

  [[nodiscard]] std::size_t k() const noexcept { return objectives.size(); }
  [[nodiscard]] std::size_t m() const noexcept { return inequalities.size(); }
  [[nodiscard]] std::size_t s() const noexcept { return equalities.size(); }
  [[nodiscard]] std::size_t slack_count() const noexcept { return context ? context->size() - n : 0; }
  [[nodiscard]] bool is_binary() const noexcept { return !bounds.has_value(); }

  bool operator==(const ProblemInstance& other) const;
};

class ProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Validates and assembles an instance over `context` (decision variables only).
ProblemInstance make_problem(ContextPtr context, std::vector<Polynomial> objectives,
                             std::vector<Polynomial> inequalities = {}, std::vector<Polynomial> equalities = {},
                             std::optional<std::vector<std::uint64_t>> bounds = std::nullopt);

/// Exact check of g_j(x) <= 0 and h_r(x) = 0. `x` has n entries, or one per
/// context variable when the instance carries slacks.
bool check_feasible(std::span<const Rational> x, const ProblemInstance& p);

std::vector<Rational> evaluate_objectives(std::span<const Rational> x, const ProblemInstance& p);

/// Point of the decision space from 0/1 integers.
std::vector<Rational> to_point(std::span<const int> bits);

}  // namespace mopip
