#include "mopip/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mopip {

namespace {

void require_same_context(const Polynomial& p, const Polynomial& q) {
  if (!same_context(p.context(), q.context())) throw ContextError("polynomials belong to different contexts");
}

bool greater_term(const Term& a, const Term& b) { return a.monomial > b.monomial; }

// Merges two strictly decreasing term lists; `sign` is applied to q.
std::vector<Term> merge_terms(std::span<const Term> p, std::span<const Term> q, int sign) {
  std::vector<Term> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() && j < q.size()) {
    const auto cmp = p[i].monomial <=> q[j].monomial;
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({q[j].monomial, sign > 0 ? q[j].coeff : Rational(-q[j].coeff)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(p[i].coeff + q[j].coeff) : Rational(p[i].coeff - q[j].coeff);
      if (sgn(c) != 0) out.push_back({p[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < p.size(); ++i) out.push_back(p[i]);
  for (; j < q.size(); ++j) out.push_back({q[j].monomial, sign > 0 ? q[j].coeff : Rational(-q[j].coeff)});
  return out;
}

}  // namespace

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c) {
  Polynomial p(std::move(ctx));
  if (sgn(c) != 0) p.terms_.push_back({Monomial(p.nvars()), c});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index, unsigned exponent) {
  Polynomial p(std::move(ctx));
  if (index >= p.nvars()) throw ContextError("variable index out of range");
  p.terms_.push_back({Monomial::variable(p.nvars(), index, exponent), Rational(1)});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::string_view name, unsigned exponent) {
  const std::size_t index = ctx->index_of(name);
  return variable(std::move(ctx), index, exponent);
}

Polynomial Polynomial::monomial(ContextPtr ctx, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ctx));
  if (m.size() != p.nvars()) throw ContextError("monomial does not match context size");
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  Polynomial p(std::move(ctx));
  for (const auto& t : terms) {
    if (t.monomial.size() != p.nvars()) throw ContextError("term does not match context size");
  }
  std::sort(terms.begin(), terms.end(), greater_term);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial Polynomial::from_sorted_terms(ContextPtr ctx, std::vector<Term> terms) {
  Polynomial p(std::move(ctx));
  p.terms_ = std::move(terms);
  return p;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return terms_.front().monomial;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return terms_.front().coeff;
}

unsigned Polynomial::total_degree() const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint64_t Polynomial::support() const noexcept {
  std::uint64_t mask = 0;
  for (const auto& t : terms_) mask |= t.monomial.support();
  return mask;
}

unsigned Polynomial::degree_in(std::size_t var) const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q);
  return Polynomial::from_sorted_terms(p.context(), merge_terms(p.terms(), q.terms(), +1));
}

Polynomial sub(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q);
  return Polynomial::from_sorted_terms(p.context(), merge_terms(p.terms(), q.terms(), -1));
}

Polynomial scale(const Polynomial& p, const Rational& c) {
  if (sgn(c) == 0) return Polynomial(p.context());
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.monomial, t.coeff * c});
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

Polynomial negate(const Polynomial& p) { return scale(p, Rational(-1)); }

Polynomial mul_term(const Polynomial& p, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return Polynomial(p.context());
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.monomial * m, t.coeff * c});
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

Polynomial sub_mul_term(const Polynomial& p, const Rational& c, const Monomial& m, const Polynomial& g) {
  require_same_context(p, g);
  std::vector<Term> scaled;
  scaled.reserve(g.size());
  for (const auto& t : g.terms()) scaled.push_back({t.monomial * m, t.coeff * c});
  return Polynomial::from_sorted_terms(p.context(), merge_terms(p.terms(), scaled, -1));
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q);
  if (p.is_zero() || q.is_zero()) return Polynomial(p.context());
  // Accumulate row by row; each row is already sorted.
  const Polynomial& outer = p.size() <= q.size() ? p : q;
  const Polynomial& inner = p.size() <= q.size() ? q : p;
  std::vector<Term> acc;
  for (const auto& t : outer.terms()) {
    std::vector<Term> row;
    row.reserve(inner.size());
    for (const auto& u : inner.terms()) row.push_back({t.monomial * u.monomial, t.coeff * u.coeff});
    acc = merge_terms(acc, row, +1);
  }
  return Polynomial::from_sorted_terms(p.context(), std::move(acc));
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::constant(p.context(), Rational(1));
  Polynomial base = p;
  while (e != 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e != 0) base = mul(base, base);
  }
  return result;
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p) {
  return {p.leading_monomial(), p.leading_coefficient()};
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw ContextError("unknown variable for differentiation");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Lowering one exponent by one keeps distinct monomials distinct and ordered.
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  return partial_derivative(p, p.context()->index_of(var));
}

Polynomial evaluate(const Polynomial& p, const Assignment& values) {
  for (const auto& [var, value] : values) {
    if (var >= p.nvars()) throw ContextError("assignment names a variable outside the context");
  }
  if (values.empty()) return p;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m = t.monomial;
    for (const auto& [var, value] : values) {
      const unsigned e = m[var];
      if (e == 0) continue;
      Rational power;
      mpz_pow_ui(power.get_num_mpz_t(), value.get_num_mpz_t(), e);
      mpz_pow_ui(power.get_den_mpz_t(), value.get_den_mpz_t(), e);
      c *= power;
      m.set(var, 0);
    }
    out.push_back({m, std::move(c)});
  }
  return Polynomial::from_terms(p.context(), std::move(out));
}

Rational evaluate_at(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.nvars()) throw ContextError("point dimension does not match context size");
  Rational sum(0);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (unsigned e = t.monomial[i]; e > 0; --e) c *= point[i];
    }
    sum += c;
  }
  return sum;
}

UnivariateResult univariate_view(const Polynomial& p) {
  if (p.is_zero()) return ConstantView{Rational(0)};
  const std::uint64_t mask = p.support();
  if (mask == 0) return ConstantView{p.terms().front().coeff};
  if ((mask & (mask - 1)) != 0) return NotUnivariate{};
  std::size_t var = 0;
  while (((mask >> var) & 1U) == 0) ++var;
  UnivariateView view{var, std::vector<Rational>(p.degree_in(var) + 1, Rational(0))};
  for (const auto& t : p.terms()) view.coeffs[t.monomial[var]] = t.coeff;
  return view;
}

Polynomial embed(const Polynomial& p, const ContextPtr& target, std::span<const std::size_t> mapping) {
  if (mapping.size() != p.nvars()) throw ContextError("embedding map does not cover the source context");
  for (auto m : mapping) {
    if (m >= target->size()) throw ContextError("embedding target index out of range");
  }
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      if (t.monomial[i] != 0) m.set(mapping[i], m[mapping[i]] + t.monomial[i]);
    }
    out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial embed_by_name(const Polynomial& p, const ContextPtr& target) {
  std::vector<std::size_t> mapping;
  mapping.reserve(p.nvars());
  for (const auto& v : p.context()->variables()) mapping.push_back(target->index_of(v.name));
  return embed(p, target, mapping);
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.size() != p.nvars()) throw ContextError("compose needs one image per variable");
  if (images.empty()) throw ContextError("compose needs a target context");
  const ContextPtr& target = images.front().context();
  for (const auto& img : images) {
    if (!same_context(img.context(), target)) throw ContextError("compose images use different contexts");
  }
  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (t.monomial[i] != 0) term = mul(term, pow(images[i], t.monomial[i]));
    }
    result = add(result, term);
  }
  return result;
}

Polynomial make_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& t : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& t : p.terms()) {
    Integer scaled = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) factor = -factor;
  return factor == 1 ? p : scale(p, factor);
}

Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero() || p.leading_coefficient() == 1) return p;
  return scale(p, Rational(1) / p.leading_coefficient());
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& vars = p.context()->variables();
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    std::string factors;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const unsigned e = t.monomial[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += vars[i].name;
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += to_short_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_short_string(mag) + "*" + factors;
    }
  }
  return out;
}

}  // namespace mopip
