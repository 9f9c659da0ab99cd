#include "mopip/monomial.hpp"

#include <algorithm>
#include <string>

namespace mopip {

namespace {

Monomial::Exponent checked_exponent(unsigned e) {
  if (e > Monomial::kMaxExponent) throw ExponentOverflow("exponent " + std::to_string(e) + " exceeds limit");
  return static_cast<Monomial::Exponent>(e);
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVariables) throw ContextError("too many variables for a monomial");
}

Monomial::Monomial(std::size_t nvars, std::span<const unsigned> exps) : Monomial(nvars) {
  if (exps.size() != nvars) throw ContextError("exponent vector length does not match context size");
  for (std::size_t i = 0; i < nvars; ++i) exps_[i] = checked_exponent(exps[i]);
  refresh();
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned exponent) {
  Monomial m(nvars);
  m.set(index, exponent);
  return m;
}

std::vector<unsigned> Monomial::exponents() const {
  return std::vector<unsigned>(exps_.begin(), exps_.begin() + nvars_);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= nvars_) throw ContextError("variable index out of range");
  exps_[i] = checked_exponent(e);
  refresh();
}

void Monomial::refresh() noexcept {
  unsigned deg = 0;
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    deg += exps_[i];
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  degree_ = static_cast<std::uint16_t>(deg);
  support_ = mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) r.exps_[i] = checked_exponent(unsigned{a.exps_[i]} + b.exps_[i]);
  r.support_ = a.support_ | b.support_;
  r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) r.exps_[i] = static_cast<Monomial::Exponent>(a.exps_[i] - b.exps_[i]);
  r.refresh();
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  r.refresh();
  return r;
}

}  // namespace mopip
