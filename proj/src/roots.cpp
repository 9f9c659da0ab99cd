#include "mopip/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mopip {

namespace dense {

Poly normalize(Poly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  return normalize(std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly r = normalize(a);
  const Poly d = normalize(b);
  if (d.empty()) throw std::domain_error("division by the zero polynomial");
  if (r.size() < d.size()) return {Poly{}, r};
  Poly q(r.size() - d.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= d.size()) {
    const std::size_t shift = r.size() - d.size();
    const Rational c = r.back() / d.back();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
    r.pop_back();
    r = normalize(std::move(r));
  }
  return {normalize(std::move(q)), r};
}

Poly gcd(Poly a, Poly b) {
  a = normalize(std::move(a));
  b = normalize(std::move(b));
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly squarefree_part(const Poly& p) {
  const Poly g = gcd(p, derivative(p));
  if (g.size() <= 1) return normalize(p);
  return divmod(p, g).first;
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace dense

namespace {

constexpr unsigned long kScanLimit = 50'000'000;

std::vector<Integer> primitive_integer(const dense::Poly& p) {
  Integer den_lcm = 1;
  for (const auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p) {
    out.push_back(c.get_num() * (den_lcm / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& c : out) c /= g;
  return out;
}

double log2_abs(const Integer& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

// Fujiwara: every complex root z satisfies |z| <= 2 max_i |a_{d-i}/a_d|^(1/i), last term halved.
double root_bound(const std::vector<Integer>& a) {
  const std::size_t d = a.size() - 1;
  const double lead = log2_abs(a[d]);
  double best = -1e300;
  for (std::size_t i = 1; i <= d; ++i) {
    const Integer& c = a[d - i];
    if (c == 0) continue;
    double l = (log2_abs(c) - lead) / static_cast<double>(i);
    if (i == d) l -= 1.0 / static_cast<double>(d);
    best = std::max(best, l);
  }
  return std::exp2(best + 1.0);
}

std::vector<unsigned long> divisors(const Integer& value) {
  Integer v = abs(value);
  if (!v.fits_ulong_p()) throw RootSearchError("leading coefficient too large to enumerate denominators");
  unsigned long n = v.get_ui();
  std::vector<unsigned long> out;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_root(const std::vector<Integer>& a, const Integer& p, const Integer& q) {
  // sum a_i p^i q^(d-i) via Horner.
  Integer v = a.back();
  Integer qpow = 1;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    qpow *= q;
    v = v * p + a[i] * qpow;
  }
  return v == 0;
}

}  // namespace

std::set<Rational> rational_roots(std::span<const Rational> coeffs) {
  dense::Poly p = dense::normalize(dense::Poly(coeffs.begin(), coeffs.end()));
  if (p.empty()) throw std::domain_error("rational_roots of the zero polynomial");
  std::set<Rational> roots;
  if (p.size() == 1) return roots;
  p = dense::squarefree_part(p);
  // Factor out x^t.
  std::size_t low = 0;
  while (sgn(p[low]) == 0) ++low;
  if (low > 0) {
    roots.insert(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (p.size() == 1) return roots;
  const auto a = primitive_integer(p);
  if (a.size() == 2) {
    Rational r(-a[0], a[1]);
    r.canonicalize();
    roots.insert(r);
    return roots;
  }
  const double bound = root_bound(a);
  const Integer& trailing = a.front();
  for (unsigned long q : divisors(a.back())) {
    const double limit = std::floor(bound * static_cast<double>(q) * (1.0 + 1e-9)) + 1.0;
    if (limit > static_cast<double>(kScanLimit)) {
      throw RootSearchError("rational root search range exceeds the scan limit");
    }
    const auto top = static_cast<unsigned long>(limit);
    const Integer qz(q);
    for (unsigned long num = 1; num <= top; ++num) {
      if (!mpz_divisible_ui_p(trailing.get_mpz_t(), num)) continue;
      if (std::gcd(num, q) != 1) continue;
      const Integer pz(num);
      if (is_root(a, pz, qz)) roots.insert(Rational(pz, qz));
      if (is_root(a, Integer(-pz), qz)) roots.insert(Rational(Integer(-pz), qz));
    }
  }
  return roots;
}

std::set<Rational> rational_roots(const Polynomial& p) {
  auto view = univariate_view(p);
  if (const auto* c = std::get_if<ConstantView>(&view)) {
    if (sgn(c->value) == 0) throw std::domain_error("rational_roots of the zero polynomial");
    return {};
  }
  if (std::holds_alternative<NotUnivariate>(view)) throw std::invalid_argument("rational_roots needs a univariate polynomial");
  return rational_roots(std::get<UnivariateView>(view).coeffs);
}

}  // namespace mopip
