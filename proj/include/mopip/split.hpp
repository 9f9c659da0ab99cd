#pragma once

#include "mopip/groebner.hpp"
#include "mopip/systems.hpp"

#include <vector>

namespace mopip {

// Every system built here contains x_i^2 - x_i for each decision variable, so
// its ideal is the intersection over a in {0,1}^n of I + <x - a>. Each branch
// is a small Buchberger run on the specialized generators.

/// Decision points a whose branch ideal is proper.
std::vector<std::vector<Rational>> proper_branches(const TransformedSystem& ts, const BuchbergerOptions& options = {},
                                                   BuchbergerStats* stats = nullptr);

/// Reduced lex basis of I intersected with Q[x]: the ideal of the proper branches.
GroebnerBasis decision_basis(const TransformedSystem& ts, const BuchbergerOptions& options = {},
                             BuchbergerStats* stats = nullptr);

/// Reduced lex basis of a zero-dimensional system, rebuilt from the points of its branches.
/// Throws ExtensionError when a branch has infinitely many points.
GroebnerBasis split_basis(const TransformedSystem& ts, const BuchbergerOptions& options = {},
                          BuchbergerStats* stats = nullptr);

}  // namespace mopip
