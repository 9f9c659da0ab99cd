#pragma once

#include "mopip/polynomial.hpp"

#include <string_view>

namespace mopip {

/// Parses `[coef][*var[^exp]]...` terms joined by `+`/`-`.
///
/// Coefficients are integers or `num/den`; variable names must exist in `ctx`;
/// repeated factors accumulate (`x1*x1` is `x1^2`). Whitespace is ignored.
/// Errors throw ParseError carrying the byte offset.
Polynomial parse_expression(std::string_view text, const ContextPtr& ctx);

}  // namespace mopip
