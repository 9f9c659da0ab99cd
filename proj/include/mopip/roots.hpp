#pragma once

#include "mopip/polynomial.hpp"

#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace mopip {

class RootSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational roots of a nonzero univariate polynomial, multiplicity discarded.
///
/// The polynomial is cleared of denominators, replaced by its squarefree part
/// and searched for p/q with p | trailing coefficient and q | leading
/// coefficient, numerators limited by the Fujiwara root bound.
std::set<Rational> rational_roots(const Polynomial& p);

/// Same on a dense coefficient list, lowest degree first.
std::set<Rational> rational_roots(std::span<const Rational> coeffs);

namespace dense {

using Poly = std::vector<Rational>;  // low to high, no trailing zeros

Poly normalize(Poly p);
Poly derivative(const Poly& p);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd.
Poly gcd(Poly a, Poly b);
Poly squarefree_part(const Poly& p);
Rational evaluate(const Poly& p, const Rational& x);

}  // namespace dense

}  // namespace mopip
