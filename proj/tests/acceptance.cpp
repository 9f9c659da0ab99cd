// Acceptance report: one PASS/FAIL line per criterion.

#include "mopip/groebner.hpp"
#include "mopip/problems.hpp"
#include "mopip/solver.hpp"
#include "mopip/split.hpp"
#include "mopip/systems.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace mopip;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

const std::vector<Algorithm> kPipelines{Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl,
                                        Algorithm::fj,   Algorithm::fj_sl, Algorithm::mofj};

Point bits_point(std::uint64_t mask, std::size_t n) {
  Point x;
  for (std::size_t i = 0; i < n; ++i) x.emplace_back(static_cast<int>((mask >> i) & 1U));
  return x;
}

Polynomial var(const ContextPtr& ctx, std::size_t i) { return Polynomial::variable(ctx, i); }

// Product of d variables starting at `start` (cyclic), so the degree is exactly d.
Polynomial product(const ContextPtr& ctx, std::size_t start, std::size_t d) {
  Polynomial p = Polynomial::constant(ctx, Rational(1));
  for (std::size_t t = 0; t < d; ++t) p = p * var(ctx, (start + t) % ctx->size());
  return p;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::size_t runs = 0;
  std::size_t bad = 0;
  for (auto f : all_families()) {
    for (std::size_t n = min_items(f); n <= 6; ++n) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = generate({f, n, seed});
        const auto ref = brute_force(inst.problem);
        for (auto a : kPipelines) {
          ++runs;
          const auto r = solve(inst.problem, a);
          if (r.nondominated != ref.nondominated || r.efficient_set() != ref.efficient_set()) {
            ++bad;
            if (v.pass) {
              v.detail = "first mismatch " + std::string(family_name(f)) + " n=" + std::to_string(n) +
                         " seed=" + std::to_string(seed) + " " + std::string(algorithm_name(a)) + "; ";
            }
            v.pass = false;
          }
        }
      }
    }
  }
  v.detail += std::to_string(runs - bad) + "/" + std::to_string(runs) + " pipeline runs equal brute force";
  return v;
}

Verdict infeasibility_certificate() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> coeff(-10, 10);
  std::size_t certified = 0;
  std::size_t empty_candidates = 0;
  std::size_t inequality_unit = 0;
  std::size_t inequality_ok = 0;
  const std::size_t count = 20;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = 2 + t % 5;
    auto ctx = make_decision_context(n);
    std::vector<Polynomial> f;
    for (int i = 0; i < 2; ++i) {
      Polynomial fi(ctx);
      for (std::size_t j = 0; j < n; ++j) fi = fi + Rational(coeff(rng)) * var(ctx, j);
      f.push_back(fi);
    }
    // Profit sum a x can reach at most sum max(a_i, 0) < b.
    Polynomial ax(ctx);
    long reach = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long a = coeff(rng);
      reach += std::max(a, 0L);
      ax = ax + Rational(a) * var(ctx, j);
    }
    std::uniform_int_distribution<long> extra(1, 10);
    const Polynomial b = Polynomial::constant(ctx, Rational(reach + extra(rng)));

    // Equality form sum a x = b: the complex variety is empty.
    const auto eq = make_problem(ctx, f, {}, {ax - b});
    SolveMetrics m;
    const auto r = solve_alg1(eq, {}, &m);
    const auto G = split_basis(build_alg1(eq));
    // Direct Buchberger as a cross-check where it stays cheap.
    const bool direct_unit = n > 3 || buchberger(build_alg1(eq).generators).is_unit();
    bool ok = G.is_unit() && direct_unit && r.status == SolveStatus::infeasible;
    if (ok) ++certified;

    // Inequality form b - sum a x <= 0.
    const auto ineq = make_problem(ctx, f, {b - ax});
    bool ineq_ok = solve_alg1(ineq).status == SolveStatus::infeasible;
    if (split_basis(build_alg1(ineq)).is_unit()) ++inequality_unit;

    bool empty = true;
    for (auto kind : {SystemKind::kkt, SystemKind::fj, SystemKind::mofj}) {
      for (const auto* p : {&eq, &ineq}) {
        SolveMetrics cm;
        const auto cr = solve_via_conditions(*p, kind, {}, &cm);
        bool feasible_candidate = false;
        for (const auto& c : cm.candidates) feasible_candidate = feasible_candidate || check_feasible(c, *p);
        empty = empty && !feasible_candidate && cr.status == SolveStatus::infeasible;
        if (p == &eq) empty = empty && cm.candidates.empty();
      }
    }
    if (empty) ++empty_candidates;
    if (ineq_ok) ++inequality_ok;
  }
  v.pass = certified == count && empty_candidates == count && inequality_ok == count;
  std::ostringstream s;
  s << "equality-form knapsacks: GB = {1} and alg1 infeasible " << certified << "/" << count
    << "; conditions pipelines without feasible candidates " << empty_candidates << "/" << count
    << "; inequality-form knapsacks: alg1 infeasible " << inequality_ok << "/" << count << ", GB = {1} "
    << inequality_unit << "/" << count << " (a linear slack always solves g + w = 0 over C)";
  v.detail = s.str();
  return v;
}

std::vector<Polynomial> random_ideal(std::mt19937_64& rng, const ContextPtr& ctx, std::size_t ngens) {
  std::vector<Polynomial> gens;
  while (gens.size() < ngens) {
    auto p = mopip::testing::random_polynomial(rng, ctx, 3, 3);
    if (!p.is_zero()) gens.push_back(p);
  }
  return gens;
}

Verdict groebner_properties() {
  Verdict v;
  std::mt19937_64 rng(4242);
  std::size_t groebner_ok = 0;
  std::size_t unique_ok = 0;
  std::size_t nf_ok = 0;
  std::size_t nf_total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto ctx = make_decision_context(2 + trial % 3);
    auto gens = random_ideal(rng, ctx, 1 + trial % 4);
    const auto G = buchberger(Ideal(ctx, gens));
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::reverse(shuffled.begin(), shuffled.end());
    const auto H = buchberger(Ideal(ctx, shuffled));
    if (is_groebner(G.basis) && is_groebner(H.basis)) ++groebner_ok;
    if (G.basis == H.basis) ++unique_ok;
    for (int k = 0; k < 5; ++k) {
      auto p = mopip::testing::random_polynomial(rng, ctx, 4, 6);
      auto r = normal_form(p, G.basis);
      ++nf_total;
      if (normal_form(r, G.basis) == r) ++nf_ok;
    }
  }
  v.pass = groebner_ok == 100 && unique_ok == 100 && nf_ok == nf_total;
  v.detail = "is_groebner " + std::to_string(groebner_ok) + "/100, permutation-invariant " +
             std::to_string(unique_ok) + "/100, normal_form idempotent " + std::to_string(nf_ok) + "/" +
             std::to_string(nf_total);
  return v;
}

Verdict system_size_structure() {
  Verdict v;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::size_t nr_paper_degree_differs = 0;
  std::string first;
  auto expect = [&](std::size_t got, std::size_t want, const std::string& what) {
    ++checks;
    if (got != want) {
      ++failed;
      if (first.empty()) first = what + " got " + std::to_string(got) + " want " + std::to_string(want);
    }
  };
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t m = 0; m <= 2; ++m) {
        for (std::size_t s = 0; s <= 1; ++s) {
          for (std::size_t df = 1; df <= 3; ++df) {
            for (std::size_t dg = 1; dg <= 3; ++dg) {
              const std::size_t dh = 1 + (df + dg) % 3;
              auto ctx = make_decision_context(n);
              std::vector<Polynomial> f, g, h;
              for (std::size_t i = 0; i < k; ++i) f.push_back(product(ctx, i, df) + var(ctx, (i + 1) % n));
              for (std::size_t j = 0; j < m; ++j) {
                g.push_back(product(ctx, j + 1, dg) - Polynomial::constant(ctx, Rational(1)));
              }
              for (std::size_t r = 0; r < s; ++r) h.push_back(product(ctx, r, dh) - var(ctx, (r + 1) % n));
              const auto p = make_problem(ctx, f, g, h);
              const std::size_t dgv = m ? dg : 0;
              const std::size_t dhv = s ? dh : 0;
              const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " m=" + std::to_string(m) +
                                      " s=" + std::to_string(s) + " df=" + std::to_string(df) + " dg=" + std::to_string(dg);

              const auto alg1 = system_stats(build_alg1(p));
              const auto kkt = system_stats(build_kkt(p));
              const auto nr = system_stats(build_nr(p));
              const auto fj = system_stats(build_fj(p));
              const auto mofj = system_stats(build_mofj(p));

              expect(kkt.n_vars, 2 * n + 2 * k + m + s + 1, tag + " kkt n_vars");
              expect(fj.n_vars, 2 * n + 2 * k + m + s + 2, tag + " fj n_vars");
              expect(mofj.n_vars, 2 * n + k + m + s, tag + " mofj n_vars");
              expect(alg1.n_gens, n + k + m + s, tag + " alg1 n_gens");
              expect(kkt.n_gens, 2 * n + k + m + s + 1, tag + " kkt n_gens");
              // Normalization generators: nr also carries sum nu = 0.
              expect(nr.n_gens, 2 * n + m + s + 2, tag + " nr n_gens (paper 2n+m+s, +2)");
              expect(fj.n_gens, 2 * n + k + m + s + 2, tag + " fj n_gens (paper 2n+k+m+s+1, +1)");
              expect(mofj.n_gens, 2 * n + m + s + 1, tag + " mofj n_gens (paper 2n+m+s, +1)");

              expect(alg1.max_deg, std::max({std::size_t{2}, std::size_t{df}, dgv, dhv}), tag + " alg1 max_deg");
              expect(kkt.max_deg, std::max({df + 2, dgv + 1, dhv}), tag + " kkt max_deg");
              expect(fj.max_deg, std::max({df + 2, dgv + 1, dhv}), tag + " fj max_deg");
              // Binary relations x_i^2 - x_i give every system degree >= 2.
              expect(mofj.max_deg, std::max({std::size_t{2}, std::size_t{df}, m ? dgv + 1 : 0, dhv}),
                     tag + " mofj max_deg");
              // nr keeps the complementarity products lambda_j g_j, so deg(g)+1 instead of deg(g).
              const std::size_t nr_deg = std::max({std::size_t{2}, std::size_t{df} + 1, m ? dgv + 1 : 0, dhv});
              expect(nr.max_deg, nr_deg, tag + " nr max_deg");
              if (nr.max_deg != std::max({std::size_t{2}, std::size_t{df} + 1, dgv, dhv})) ++nr_paper_degree_differs;
            }
          }
        }
      }
    }
  }
  v.pass = failed == 0;
  v.detail = std::to_string(checks - failed) + "/" + std::to_string(checks) +
             " checks; deviations asserted: +1 normalization generator for nr/fj/mofj (+1 more for sum nu = 0 in nr), "
             "degree floor 2 for mofj, nr max_deg uses deg(g)+1 (differs from deg(g) on " +
             std::to_string(nr_paper_degree_differs) + " symbolic instances)";
  if (!first.empty()) v.detail += "; first failure: " + first;
  return v;
}

Verdict nondominated_counts() {
  Verdict v;
  std::ostringstream s;
  std::size_t out_of_range = 0;
  std::size_t feasible = 0;
  std::size_t feasible_in_range = 0;
  double avg2 = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    s << "n=" << n << " #nd";
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = solve(generate({Family::biobj_linkn, n, seed}).problem, Algorithm::mofj);
      const auto nd = r.nondominated.size();
      s << ' ' << nd;
      if (nd < 1 || nd > (std::size_t{1} << n)) ++out_of_range;
      if (nd > 0 && nd <= (std::size_t{1} << n)) ++feasible_in_range;
      if (r.status == SolveStatus::solved) ++feasible;
      if (n == 2) avg2 += static_cast<double>(nd) / 5.0;
    }
    s << "; ";
  }
  // "Same order" as the reported 1.8: within a factor of 3.
  const bool avg_ok = avg2 >= 0.6 && avg2 <= 5.4;
  v.pass = out_of_range == 0 && avg_ok;
  char buf[64];
  std::snprintf(buf, sizeof buf, "average at n=2 %.1f (reference 1.8)", avg2);
  s << buf << "; " << out_of_range << "/25 instances outside [1, 2^n]";
  if (out_of_range != 0) s << " (infeasible instances: b drawn above the reachable profit)";
  s << "; feasible instances in range " << feasible_in_range << "/" << feasible;
  v.detail = s.str();
  return v;
}

Verdict transform_correctness() {
  Verdict v;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::uint64_t> bound(1, 7);
  std::size_t binarize_ok = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 3;
    auto ctx = make_decision_context(n);
    std::vector<Polynomial> f;
    for (int i = 0; i < 2; ++i) f.push_back(mopip::testing::random_polynomial(rng, ctx, 2, 4) + var(ctx, i % n));
    Polynomial g = Polynomial::constant(ctx, Rational(coeff(rng)));
    for (std::size_t i = 0; i < n; ++i) g = g + Rational(coeff(rng)) * var(ctx, i);
    std::vector<std::uint64_t> u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(bound(rng));
    const auto p = make_problem(ctx, f, {g}, {}, u);
    const auto ref = brute_force(p);
    const auto bin = binarize(p);
    const auto rb = brute_force(bin);
    std::set<Point> decoded;
    for (const auto& e : rb.efficient) decoded.insert(decode_binarized(e.x, u));
    const auto via_alg1 = solve(p, Algorithm::alg1);
    if (rb.nondominated == ref.nondominated && decoded == ref.efficient_set() &&
        via_alg1.efficient_set() == ref.efficient_set()) {
      ++binarize_ok;
    }
  }

  std::size_t slack_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto inst = generate({t % 2 ? Family::biobj_linkn : Family::portfolio, n, 9000 + static_cast<std::uint64_t>(t)});
    const auto& p = inst.problem;
    const auto sl = slack_transform(p, SlackMode::linear);
    bool same = sl.inequalities.empty() && sl.slack_count() == p.m();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const Point x = bits_point(mask, n);
      Point full = x;
      for (const auto& gj : p.inequalities) full.push_back(-evaluate_at(gj, x));
      bool slack_nonneg = true;
      for (std::size_t j = n; j < full.size(); ++j) slack_nonneg = slack_nonneg && full[j] >= 0;
      const bool transformed = check_feasible(full, sl) && slack_nonneg;
      same = same && transformed == check_feasible(x, p);
      // The slack value is forced: any other w violates g + w = 0.
      Point shifted = full;
      shifted.back() += 1;
      same = same && !check_feasible(shifted, sl);
    }
    if (same) ++slack_ok;
  }
  v.pass = binarize_ok == 50 && slack_ok == 100;
  v.detail = "binarize preserves Pareto sets " + std::to_string(binarize_ok) +
             "/50; linear slacks preserve feasible sets " + std::to_string(slack_ok) + "/100";
  return v;
}

Verdict scaling_invariance() {
  Verdict v;
  const std::vector<Rational> factors{Rational(3, 2), Rational(7), Rational(1, 5), Rational(10, 3), Rational(2)};
  std::size_t ok = 0;
  for (int t = 0; t < 25; ++t) {
    const auto f = all_families()[static_cast<std::size_t>(t) % all_families().size()];
    const std::size_t n = min_items(f) + static_cast<std::size_t>(t) % 3;
    const auto inst = generate({f, n, 500 + static_cast<std::uint64_t>(t)});
    auto scaled = inst.problem;
    const std::size_t which = static_cast<std::size_t>(t) % scaled.k();
    scaled.objectives[which] = factors[static_cast<std::size_t>(t) % factors.size()] * scaled.objectives[which];
    bool same = true;
    for (auto a : {Algorithm::alg1, Algorithm::kkt, Algorithm::mofj, Algorithm::brute}) {
      same = same && solve(inst.problem, a).efficient_set() == solve(scaled, a).efficient_set();
    }
    if (same) ++ok;
  }
  v.pass = ok == 25;
  v.detail = "X_E unchanged on " + std::to_string(ok) + "/25 scaled instances (alg1, kkt, mofj, brute)";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"infeasibility certificate", infeasibility_certificate},
      {"Groebner engine properties", groebner_properties},
      {"system size structure", system_size_structure},
      {"nondominated counts", nondominated_counts},
      {"transform correctness", transform_correctness},
      {"positive scaling invariance", scaling_invariance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && only.count(i + 1) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::printf("[%s] %zu %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return 0;
}
