#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mopip {

/// Arbitrary-precision integer. GMP keeps the magnitude canonical.
using Integer = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive denominator.
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Canonical "num/den" text; the denominator is always written, even when it is 1.
std::string to_fraction_string(const Rational& q);

/// Shortest text: "num" for integers, "num/den" otherwise.
std::string to_short_string(const Rational& q);

/// Accepts "num", "num/den" with an optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace mopip
