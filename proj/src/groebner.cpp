#include "mopip/groebner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace mopip {

namespace {

struct Divisor {
  const Polynomial* poly;
  Monomial lm;
  Rational lc;
};

// p - c*m*g over raw term vectors, skipping g's leading term (it cancels by construction).
std::vector<Term> reduce_step(std::span<const Term> rest, const Rational& factor, const Monomial& m,
                              std::span<const Term> g_tail) {
  std::vector<Term> out;
  out.reserve(rest.size() + g_tail.size());
  std::size_t i = 0, j = 0;
  while (i < rest.size() && j < g_tail.size()) {
    Monomial gm = g_tail[j].monomial * m;
    const auto cmp = rest[i].monomial <=> gm;
    if (cmp > 0) {
      out.push_back(rest[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -factor * g_tail[j].coeff});
      ++j;
    } else {
      Rational c = rest[i].coeff - factor * g_tail[j].coeff;
      if (sgn(c) != 0) out.push_back({rest[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < rest.size(); ++i) out.push_back(rest[i]);
  for (; j < g_tail.size(); ++j) out.push_back({g_tail[j].monomial * m, -factor * g_tail[j].coeff});
  return out;
}

class Reducer {
 public:
  explicit Reducer(std::uint64_t budget = std::numeric_limits<std::uint64_t>::max()) : budget_(budget) {}

  Polynomial reduce(const Polynomial& p, std::span<const Divisor> divisors) {
    std::vector<Term> work(p.terms().begin(), p.terms().end());
    std::vector<Term> remainder;
    std::size_t head = 0;
    while (head < work.size()) {
      const Term& t = work[head];
      const Divisor* hit = nullptr;
      for (const auto& d : divisors) {
        if (d.lm.divides(t.monomial)) {
          hit = &d;
          break;
        }
      }
      if (hit == nullptr) {
        remainder.push_back(std::move(work[head]));
        ++head;
        continue;
      }
      if (++steps_ > budget_) throw ResourceLimitExceeded(steps_);
      const Rational factor = t.coeff / hit->lc;
      const Monomial m = t.monomial / hit->lm;
      auto g_terms = hit->poly->terms();
      work = reduce_step(std::span<const Term>(work).subspan(head + 1), factor, m, g_terms.subspan(1));
      head = 0;
    }
    return Polynomial::from_sorted_terms(p.context(), std::move(remainder));
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }

 private:
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

std::vector<Divisor> as_divisors(std::span<const Polynomial> polys) {
  std::vector<Divisor> out;
  out.reserve(polys.size());
  for (const auto& g : polys) out.push_back({&g, g.leading_monomial(), g.leading_coefficient()});
  return out;
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class BuchbergerEngine {
 public:
  BuchbergerEngine(ContextPtr ctx, const BuchbergerOptions& options) : ctx_(std::move(ctx)), reducer_(options.max_steps) {}

  GroebnerBasis run(std::span<const Polynomial> generators, BuchbergerStats* stats) {
    std::vector<Polynomial> input(generators.begin(), generators.end());
    std::stable_sort(input.begin(), input.end(),
                     [](const Polynomial& a, const Polynomial& b) { return a.leading_monomial() < b.leading_monomial(); });
    for (const auto& f : input) {
      if (insert(reducer_.reduce(f, active_divisors()))) return finish_unit(stats);
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const CriticalPair& a, const CriticalPair& b) {
        if (a.lcm != b.lcm) return a.lcm < b.lcm;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      const CriticalPair pair = *best;
      pairs_.erase(best);
      ++stats_.pairs_reduced;
      Polynomial s = s_polynomial(polys_[pair.i], polys_[pair.j]);
      Polynomial h = reducer_.reduce(s, active_divisors());
      if (h.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      if (insert(std::move(h))) return finish_unit(stats);
    }
    return finish(stats);
  }

 private:
  // Returns true when the ideal turned out to be the unit ideal.
  bool insert(Polynomial h) {
    if (h.is_zero()) return false;
    if (h.is_constant()) return true;
    h = make_primitive(h);
    const std::size_t hi = polys_.size();
    const Monomial hlm = h.leading_monomial();
    polys_.push_back(std::move(h));
    lms_.push_back(hlm);
    active_.push_back(true);
    update(hi);
    stats_.max_basis_size = std::max(stats_.max_basis_size, active_count());
    rebuild_divisors();
    return false;
  }

  // Gebauer-Moeller pair update for the new element `hi`.
  void update(std::size_t hi) {
    const Monomial& hlm = lms_[hi];
    std::vector<CriticalPair> fresh;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g]) fresh.push_back({g, hi, lcm(lms_[g], hlm)});
    }
    // Chain criterion among the new pairs; of several pairs with one lcm exactly one survives.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool drop = false;
      if (!lms_[p.i].coprime(hlm)) {
        for (std::size_t b = a + 1; b < fresh.size() && !drop; ++b) drop = fresh[b].lcm.divides(p.lcm);
        for (std::size_t b = 0; b < kept.size() && !drop; ++b) drop = kept[b].lcm.divides(p.lcm);
      }
      if (drop) {
        ++stats_.pairs_pruned;
      } else {
        kept.push_back(p);
      }
    }
    // Product criterion.
    std::vector<CriticalPair> accepted;
    for (const auto& p : kept) {
      if (lms_[p.i].coprime(hlm)) {
        ++stats_.pairs_pruned;
      } else {
        accepted.push_back(p);
      }
    }
    // Prune old pairs whose lcm is strictly divisible through h.
    std::erase_if(pairs_, [&](const CriticalPair& p) {
      if (!hlm.divides(p.lcm)) return false;
      if (lcm(lms_[p.i], hlm) == p.lcm || lcm(lms_[p.j], hlm) == p.lcm) return false;
      ++stats_.pairs_pruned;
      return true;
    });
    pairs_.insert(pairs_.end(), accepted.begin(), accepted.end());
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && hlm.divides(lms_[g])) active_[g] = false;
    }
  }

  void rebuild_divisors() {
    order_.clear();
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (active_[i]) order_.push_back(i);
    }
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return lms_[a] < lms_[b]; });
    divisors_.clear();
    for (auto i : order_) divisors_.push_back({&polys_[i], lms_[i], polys_[i].leading_coefficient()});
  }

  std::span<const Divisor> active_divisors() const { return divisors_; }

  std::size_t active_count() const { return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true)); }

  GroebnerBasis finish_unit(BuchbergerStats* stats) {
    record(stats);
    return {ctx_, {Polynomial::constant(ctx_, Rational(1))}, true};
  }

  GroebnerBasis finish(BuchbergerStats* stats) {
    // Active elements already have pairwise non-dividing leading monomials; inter-reduce the tails.
    std::vector<Polynomial> minimal;
    for (auto i : order_) minimal.push_back(polys_[i]);
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      std::vector<Divisor> others;
      for (std::size_t b = 0; b < minimal.size(); ++b) {
        if (b != a) others.push_back({&minimal[b], minimal[b].leading_monomial(), minimal[b].leading_coefficient()});
      }
      reduced.push_back(make_monic(reducer_.reduce(minimal[a], others)));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Polynomial& x, const Polynomial& y) { return x.leading_monomial() < y.leading_monomial(); });
    record(stats);
    return {ctx_, std::move(reduced), true};
  }

  void record(BuchbergerStats* stats) {
    stats_.reduction_steps = reducer_.steps();
    if (stats != nullptr) *stats = stats_;
  }

  ContextPtr ctx_;
  Reducer reducer_;
  std::vector<Polynomial> polys_;
  std::vector<Monomial> lms_;
  std::vector<bool> active_;
  std::vector<std::size_t> order_;
  std::vector<Divisor> divisors_;
  std::vector<CriticalPair> pairs_;
  BuchbergerStats stats_;
};

}  // namespace

Ideal::Ideal(ContextPtr ctx, std::vector<Polynomial> generators) : ctx_(std::move(ctx)) {
  for (auto& g : generators) {
    if (!same_context(g.context(), ctx_)) throw ContextError("ideal generator uses a different context");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors) {
  for (const auto& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("normal_form divisor is zero");
    if (!same_context(g.context(), p.context())) throw ContextError("normal_form divisor uses a different context");
  }
  const auto ds = as_divisors(divisors);
  return Reducer{}.reduce(p, ds);
}

Polynomial s_polynomial(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("S-polynomial of a zero polynomial");
  if (!same_context(p.context(), q.context())) throw ContextError("S-polynomial operands use different contexts");
  const Monomial l = lcm(p.leading_monomial(), q.leading_monomial());
  return sub(mul_term(p, l / p.leading_monomial(), Rational(1) / p.leading_coefficient()),
             mul_term(q, l / q.leading_monomial(), Rational(1) / q.leading_coefficient()));
}

GroebnerBasis buchberger(const Ideal& ideal, const BuchbergerOptions& options, BuchbergerStats* stats) {
  return BuchbergerEngine(ideal.context(), options).run(ideal.generators(), stats);
}

GroebnerBasis elimination_subset(const GroebnerBasis& G, std::span<const std::size_t> keep) {
  const std::size_t n = G.context->size();
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != n - sorted.size() + k) {
      throw std::invalid_argument("elimination_subset: kept variables must be a suffix of the context order");
    }
    mask |= std::uint64_t{1} << sorted[k];
  }
  GroebnerBasis out{G.context, {}, G.reduced};
  for (const auto& g : G.basis) {
    if ((g.support() & ~mask) == 0) out.basis.push_back(g);
  }
  return out;
}

bool is_groebner(std::span<const Polynomial> G) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      if (!normal_form(s_polynomial(G[i], G[j]), G).is_zero()) return false;
    }
  }
  return true;
}

std::string dump(const GroebnerBasis& G) {
  std::vector<std::string> lines;
  lines.reserve(G.basis.size());
  for (const auto& g : G.basis) lines.push_back(to_string(g));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace mopip

namespace mopip {

namespace {

// Row of the echelon form: values at the points plus the standard-monomial combination producing them.
struct EchelonRow {
  std::size_t pivot;
  std::vector<Rational> values;
  std::vector<Rational> combo;
};

}  // namespace

GroebnerBasis vanishing_ideal(ContextPtr ctx, std::span<const std::size_t> vars,
                              std::span<const std::vector<Rational>> points) {
  if (!ctx) throw std::invalid_argument("vanishing_ideal needs a context");
  for (auto v : vars) {
    if (v >= ctx->size()) throw std::invalid_argument("vanishing_ideal variable outside the context");
  }
  std::set<std::vector<Rational>> unique;
  for (const auto& p : points) {
    if (p.size() != vars.size()) throw std::invalid_argument("vanishing_ideal point has the wrong dimension");
    unique.insert(p);
  }
  if (unique.empty()) return {ctx, {Polynomial::constant(ctx, Rational(1))}, true};
  const std::vector<std::vector<Rational>> pts(unique.begin(), unique.end());
  const std::size_t npts = pts.size();
  const std::size_t nvars = ctx->size();

  std::vector<Monomial> standard;
  std::vector<EchelonRow> rows;
  std::vector<Polynomial> basis;
  std::vector<Monomial> leads;
  std::map<Monomial, std::vector<Rational>> candidates;
  candidates.emplace(Monomial(nvars), std::vector<Rational>(npts, Rational(1)));

  while (!candidates.empty()) {
    auto node = candidates.extract(candidates.begin());
    const Monomial& t = node.key();
    if (std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(t); })) continue;
    std::vector<Rational> v = std::move(node.mapped());
    std::vector<Rational> combo(standard.size() + 1, Rational(0));
    combo.back() = 1;  // coefficient of t itself
    for (const auto& r : rows) {
      if (sgn(v[r.pivot]) == 0) continue;
      const Rational factor = v[r.pivot] / r.values[r.pivot];
      for (std::size_t p = 0; p < npts; ++p) v[p] -= factor * r.values[p];
      for (std::size_t s = 0; s < r.combo.size(); ++s) combo[s] -= factor * r.combo[s];
    }
    const auto pivot = std::find_if(v.begin(), v.end(), [](const Rational& c) { return sgn(c) != 0; });
    if (pivot == v.end()) {
      // t - sum over standard monomials vanishes on every point.
      std::vector<Term> terms{{t, Rational(1)}};
      for (std::size_t s = standard.size(); s-- > 0;) {
        if (sgn(combo[s]) != 0) terms.push_back({standard[s], combo[s]});
      }
      basis.push_back(Polynomial::from_terms(ctx, std::move(terms)));
      leads.push_back(t);
      continue;
    }
    const std::size_t idx = standard.size();
    standard.push_back(t);
    for (auto& r : rows) r.combo.resize(idx + 1, Rational(0));
    rows.push_back({static_cast<std::size_t>(pivot - v.begin()), std::move(v), std::move(combo)});
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Monomial next = t * Monomial::variable(nvars, vars[i]);
      if (candidates.contains(next)) continue;
      std::vector<Rational> values(npts);
      for (std::size_t p = 0; p < npts; ++p) {
        Rational value(1);
        for (std::size_t j = 0; j < vars.size(); ++j) {
          for (unsigned e = 0; e < next[vars[j]]; ++e) value *= pts[p][j];
        }
        values[p] = std::move(value);
      }
      candidates.emplace(std::move(next), std::move(values));
    }
  }
  std::sort(basis.begin(), basis.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.leading_monomial() < b.leading_monomial(); });
  return {ctx, std::move(basis), true};
}

}  // namespace mopip
