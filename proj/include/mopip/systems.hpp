#pragma once

#include "mopip/groebner.hpp"
#include "mopip/problem.hpp"

#include <string_view>
#include <vector>

namespace mopip {

enum class SystemKind { alg1, kkt, nr, fj, mofj };

std::string_view kind_name(SystemKind kind);

enum class SlackMode {
  keep,    // inequalities stay as g_j <= 0 and are checked after solving
  linear,  // g_j + w_j = 0 with w_j >= 0
};

/// A problem encoded as an ideal over a context with role blocks.
struct TransformedSystem {
  SystemKind kind;
  ContextPtr context;
  Ideal generators;
  /// Every context variable, smallest first (the reverse of context order).
  std::vector<std::size_t> solve_order;
  /// Variables whose values must be >= 0 when solved.
  std::vector<std::size_t> sign_filters;
  /// Context positions of x1..xn, y1..yk and the slacks.
  std::vector<std::size_t> decision_vars;
  std::vector<std::size_t> objective_vars;
  std::vector<std::size_t> slack_vars;
};

struct SystemStats {
  std::size_t n_vars = 0;
  std::size_t n_gens = 0;
  unsigned max_deg = 0;

  bool operator==(const SystemStats&) const = default;
};

/// Replaces each bounded x_i by sum_j 2^j z_{i,j}, j = 0..floor(log2 u_i).
///
/// When u_i + 1 is not a power of two the inequality sum_j 2^j z_{i,j} - u_i <= 0
/// is appended so the binary box does not overshoot the integer box.
ProblemInstance binarize(const ProblemInstance& p);

/// Number of binary digits used for a variable bounded by u.
std::size_t binary_width(std::uint64_t u);

/// Integer vector encoded by the binary digits of a binarized point.
std::vector<Rational> decode_binarized(std::span<const Rational> bits, std::span<const std::uint64_t> bounds);

/// Linear mode turns every g_j <= 0 into g_j + w_j = 0 and appends w_j to the context.
ProblemInstance slack_transform(const ProblemInstance& p, SlackMode mode);

/// Sum of the negative coefficients of f: a lower bound of f over the binary cube.
Rational lower_bound(const Polynomial& f);

TransformedSystem build_alg1(const ProblemInstance& p, SlackMode mode = SlackMode::linear);
TransformedSystem build_kkt(const ProblemInstance& p, SlackMode mode = SlackMode::keep);
TransformedSystem build_nr(const ProblemInstance& p, SlackMode mode = SlackMode::keep);
TransformedSystem build_fj(const ProblemInstance& p, SlackMode mode = SlackMode::keep);
TransformedSystem build_mofj(const ProblemInstance& p, SlackMode mode = SlackMode::keep);

SystemStats system_stats(const TransformedSystem& ts);

}  // namespace mopip
