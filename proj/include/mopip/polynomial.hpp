#pragma once

#include "mopip/monomial.hpp"
#include "mopip/rational.hpp"
#include "mopip/var_context.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mopip {

struct Term {
  Monomial monomial;
  Rational coeff;

  bool operator==(const Term&) const = default;
};

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept strictly decreasing under the lex order of the context and
/// never hold a zero coefficient, so equality is structural. Values are
/// immutable once built.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(ContextPtr ctx, const Rational& c);
  static Polynomial variable(ContextPtr ctx, std::size_t index, unsigned exponent = 1);
  static Polynomial variable(ContextPtr ctx, std::string_view name, unsigned exponent = 1);
  static Polynomial monomial(ContextPtr ctx, const Monomial& m, const Rational& c);
  /// Sorts, merges like terms and drops zeros.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);
  /// Caller guarantees strictly decreasing monomials and nonzero coefficients.
  static Polynomial from_sorted_terms(ContextPtr ctx, std::vector<Term> terms);

  [[nodiscard]] const ContextPtr& context() const noexcept { return ctx_; }
  [[nodiscard]] std::size_t nvars() const noexcept { return ctx_ ? ctx_->size() : 0; }
  [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
  }

  /// Requires a nonzero polynomial.
  [[nodiscard]] const Monomial& leading_monomial() const;
  [[nodiscard]] const Rational& leading_coefficient() const;

  [[nodiscard]] unsigned total_degree() const noexcept;
  /// Bitmask of the variables that occur.
  [[nodiscard]] std::uint64_t support() const noexcept;
  [[nodiscard]] unsigned degree_in(std::size_t var) const noexcept;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
  }

 private:
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial scale(const Polynomial& p, const Rational& c);
Polynomial negate(const Polynomial& p);
/// c * m * p
Polynomial mul_term(const Polynomial& p, const Monomial& m, const Rational& c);
/// p - c * m * g in one merge pass.
Polynomial sub_mul_term(const Polynomial& p, const Rational& c, const Monomial& m, const Polynomial& g);
Polynomial pow(const Polynomial& p, unsigned e);

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator-(const Polynomial& p) { return negate(p); }
inline Polynomial operator*(const Rational& c, const Polynomial& p) { return scale(p, c); }

/// Greatest monomial under the context lex order with its coefficient.
std::pair<Monomial, Rational> leading_term(const Polynomial& p);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);
Polynomial partial_derivative(const Polynomial& p, std::string_view var);

/// Partial assignment keyed by context position.
using Assignment = std::map<std::size_t, Rational>;

/// Substitutes the assigned variables; the result stays in the same context.
Polynomial evaluate(const Polynomial& p, const Assignment& values);
/// Full evaluation at a point given in context order.
Rational evaluate_at(const Polynomial& p, std::span<const Rational> point);

struct ConstantView {
  Rational value;
};
struct UnivariateView {
  std::size_t var;
  std::vector<Rational> coeffs;  // low to high degree
};
struct NotUnivariate {};

using UnivariateResult = std::variant<ConstantView, UnivariateView, NotUnivariate>;

UnivariateResult univariate_view(const Polynomial& p);

/// Rebinds p into `target`; `mapping[i]` is the target position of source variable i.
Polynomial embed(const Polynomial& p, const ContextPtr& target, std::span<const std::size_t> mapping);
/// Embeds by matching variable names.
Polynomial embed_by_name(const Polynomial& p, const ContextPtr& target);

/// Replaces variable i of p's context by images[i] (all images share one context).
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images);

/// Scales to integer coefficients with gcd 1 and positive leading coefficient.
Polynomial make_primitive(const Polynomial& p);
/// Scales to leading coefficient 1.
Polynomial make_monic(const Polynomial& p);

/// Canonical text: decreasing lex, coefficient 1 and exponent 1 elided.
std::string to_string(const Polynomial& p);

}  // namespace mopip
