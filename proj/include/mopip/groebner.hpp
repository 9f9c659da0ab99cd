#pragma once

#include "mopip/polynomial.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mopip {

/// Raised when Buchberger runs past its reduction-step budget. Never a wrong answer.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  explicit ResourceLimitExceeded(std::uint64_t steps)
      : std::runtime_error("Groebner basis step budget exceeded after " + std::to_string(steps) + " reduction steps"),
        steps_(steps) {}
  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }

 private:
  std::uint64_t steps_;
};

/// Generators of a polynomial ideal. Zero generators are dropped on construction.
class Ideal {
 public:
  Ideal(ContextPtr ctx, std::vector<Polynomial> generators);

  [[nodiscard]] const ContextPtr& context() const noexcept { return ctx_; }
  [[nodiscard]] std::span<const Polynomial> generators() const noexcept { return gens_; }

 private:
  ContextPtr ctx_;
  std::vector<Polynomial> gens_;
};

struct GroebnerBasis {
  ContextPtr context;
  /// Sorted by leading monomial, ascending.
  std::vector<Polynomial> basis;
  bool reduced = false;

  /// True for the basis {1} of the unit ideal.
  [[nodiscard]] bool is_unit() const noexcept { return basis.size() == 1 && basis.front().is_constant(); }
};

struct BuchbergerOptions {
  std::uint64_t max_steps = 10'000'000;
};

struct BuchbergerStats {
  std::uint64_t reduction_steps = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t pairs_pruned = 0;
  std::size_t max_basis_size = 0;
};

/// Full reduction of p by `divisors`; the first divisor in list order whose
/// leading monomial divides the current term is used.
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors);

/// (L/lt(p)) p - (L/lt(q)) q with L the lcm of the leading monomials.
Polynomial s_polynomial(const Polynomial& p, const Polynomial& q);

/// Reduced lex Groebner basis (monic elements, sorted ascending by leading monomial).
///
/// Pairs are taken smallest-lcm first and pruned with the Gebauer-Moeller
/// update, which applies both the product and the chain criterion.
GroebnerBasis buchberger(const Ideal& ideal, const BuchbergerOptions& options = {}, BuchbergerStats* stats = nullptr);

/// Elements of G supported on `keep`, which must be the trailing (smallest) variables of the context.
GroebnerBasis elimination_subset(const GroebnerBasis& G, std::span<const std::size_t> keep);

/// Reduced lex basis of the polynomials in `vars` vanishing on `points` (Buchberger-Moeller).
///
/// points[p][i] is the value of vars[i]. The result lives in `ctx` and involves
/// only `vars`; no points gives {1}.
GroebnerBasis vanishing_ideal(ContextPtr ctx, std::span<const std::size_t> vars,
                              std::span<const std::vector<Rational>> points);

/// Buchberger's criterion: every pairwise S-polynomial reduces to zero.
bool is_groebner(std::span<const Polynomial> G);

/// One element per line in canonical text form, lines sorted.
std::string dump(const GroebnerBasis& G);

}  // namespace mopip
