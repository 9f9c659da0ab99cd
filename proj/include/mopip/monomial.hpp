#pragma once

#include "mopip/var_context.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <vector>

namespace mopip {

class ExponentOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exponent vector over a context of at most kMaxVariables variables.
///
/// Exponents live inline so that comparison under lex is a single memcmp:
/// position 0 is the most significant variable.
class Monomial {
 public:
  using Exponent = std::uint8_t;
  static constexpr unsigned kMaxExponent = 255;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::size_t nvars, std::span<const unsigned> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned exponent = 1);

  [[nodiscard]] std::size_t size() const noexcept { return nvars_; }
  [[nodiscard]] unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }
  [[nodiscard]] unsigned degree() const noexcept { return degree_; }
  [[nodiscard]] std::uint64_t support() const noexcept { return support_; }
  [[nodiscard]] bool is_one() const noexcept { return degree_ == 0; }
  [[nodiscard]] std::vector<unsigned> exponents() const;

  void set(std::size_t i, unsigned e);

  /// True if this monomial divides `other`.
  [[nodiscard]] bool divides(const Monomial& other) const noexcept {
    if ((support_ & ~other.support_) != 0) return false;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  [[nodiscard]] bool coprime(const Monomial& other) const noexcept { return (support_ & other.support_) == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    const int c = std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVariables);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVariables) == 0;
  }

 private:
  void refresh() noexcept;

  std::array<Exponent, kMaxVariables> exps_{};
  std::uint64_t support_ = 0;
  std::uint16_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

}  // namespace mopip
