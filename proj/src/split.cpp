#include "mopip/split.hpp"

#include "mopip/solver.hpp"

#include <algorithm>

namespace mopip {

namespace {

class BranchRunner {
 public:
  BranchRunner(const TransformedSystem& ts, const BuchbergerOptions& options) : ts_(ts), options_(options) {
    if (ts.decision_vars.size() >= 63) throw std::invalid_argument("too many decision variables to split on");
  }

  [[nodiscard]] std::size_t count() const { return std::size_t{1} << ts_.decision_vars.size(); }

  std::vector<Rational> point(std::size_t mask) const {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < ts_.decision_vars.size(); ++i) a.emplace_back(static_cast<int>((mask >> i) & 1U));
    return a;
  }

  GroebnerBasis branch(const std::vector<Rational>& a) {
    Assignment values;
    for (std::size_t i = 0; i < a.size(); ++i) values.emplace(ts_.decision_vars[i], a[i]);
    std::vector<Polynomial> gens;
    for (const auto& g : ts_.generators.generators()) gens.push_back(evaluate(g, values));
    BuchbergerOptions left = options_;
    left.max_steps = options_.max_steps > totals_.reduction_steps ? options_.max_steps - totals_.reduction_steps : 0;
    BuchbergerStats st;
    try {
      auto G = buchberger(Ideal(ts_.context, std::move(gens)), left, &st);
      accumulate(st);
      return G;
    } catch (const ResourceLimitExceeded& e) {
      throw ResourceLimitExceeded(totals_.reduction_steps + e.steps());
    }
  }

  void publish(BuchbergerStats* stats) const {
    if (stats != nullptr) *stats = totals_;
  }

 private:
  void accumulate(const BuchbergerStats& st) {
    totals_.reduction_steps += st.reduction_steps;
    totals_.pairs_reduced += st.pairs_reduced;
    totals_.zero_reductions += st.zero_reductions;
    totals_.pairs_pruned += st.pairs_pruned;
    totals_.max_basis_size = std::max(totals_.max_basis_size, st.max_basis_size);
  }

  const TransformedSystem& ts_;
  BuchbergerOptions options_;
  BuchbergerStats totals_;
};

}  // namespace

std::vector<std::vector<Rational>> proper_branches(const TransformedSystem& ts, const BuchbergerOptions& options,
                                                   BuchbergerStats* stats) {
  BranchRunner runner(ts, options);
  std::vector<std::vector<Rational>> out;
  for (std::size_t mask = 0; mask < runner.count(); ++mask) {
    auto a = runner.point(mask);
    if (!runner.branch(a).is_unit()) out.push_back(std::move(a));
  }
  runner.publish(stats);
  return out;
}

GroebnerBasis decision_basis(const TransformedSystem& ts, const BuchbergerOptions& options, BuchbergerStats* stats) {
  return vanishing_ideal(ts.context, ts.decision_vars, proper_branches(ts, options, stats));
}

GroebnerBasis split_basis(const TransformedSystem& ts, const BuchbergerOptions& options, BuchbergerStats* stats) {
  BranchRunner runner(ts, options);
  TransformedSystem unfiltered = ts;
  unfiltered.sign_filters.clear();
  std::vector<std::vector<Rational>> points;
  for (std::size_t mask = 0; mask < runner.count(); ++mask) {
    const auto a = runner.point(mask);
    const auto G = runner.branch(a);
    if (G.is_unit()) continue;
    PartialSolution start(ts.context->size());
    for (std::size_t i = 0; i < a.size(); ++i) start.set(ts.decision_vars[i], a[i]);
    // Branch bases never mention x, so the decision levels are already assigned.
    for (auto& s : enumerate_from(unfiltered, G, {start}, ts.solve_order.size())) points.push_back(std::move(s.values));
  }
  runner.publish(stats);
  std::vector<std::size_t> all(ts.context->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return vanishing_ideal(ts.context, all, points);
}

}  // namespace mopip
