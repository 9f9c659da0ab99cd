#include "mopip/systems.hpp"

#include <algorithm>

namespace mopip {

std::string_view kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::alg1: return "ALG1";
    case SystemKind::kkt: return "KKT";
    case SystemKind::nr: return "NR";
    case SystemKind::fj: return "FJ";
    case SystemKind::mofj: return "MOFJ";
  }
  return "?";
}

std::size_t binary_width(std::uint64_t u) {
  std::size_t bits = 0;
  while (u != 0) {
    ++bits;
    u >>= 1U;
  }
  return bits;
}

ProblemInstance binarize(const ProblemInstance& p) {
  if (!p.bounds) throw ProblemError("binarize requires integer bounds");
  if (p.slack_count() != 0) throw ProblemError("binarize expects a problem without slack variables");
  const auto& u = *p.bounds;
  ContextBuilder builder;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (u[i] < 1) throw ProblemError("integer bounds must be at least 1");
    for (std::size_t j = 0; j < binary_width(u[i]); ++j) {
      builder.add((*p.context)[i].name == "x" + std::to_string(i + 1)
                      ? "z" + std::to_string(i + 1) + "_" + std::to_string(j)
                      : (*p.context)[i].name + "_" + std::to_string(j),
                  VarRole::decision, 0);
    }
  }
  ContextPtr target = builder.build();
  std::vector<Polynomial> images;
  std::vector<Polynomial> bound_constraints;
  std::size_t next = 0;
  for (std::size_t i = 0; i < p.n; ++i) {
    Polynomial image(target);
    for (std::size_t j = 0; j < binary_width(u[i]); ++j) {
      image = image + Rational(Integer(1) << static_cast<mp_bitcnt_t>(j)) * Polynomial::variable(target, next++);
    }
    if (((u[i] + 1) & u[i]) != 0) bound_constraints.push_back(image - Polynomial::constant(target, Rational(u[i])));
    images.push_back(std::move(image));
  }
  auto substitute = [&](const std::vector<Polynomial>& polys) {
    std::vector<Polynomial> out;
    out.reserve(polys.size());
    for (const auto& q : polys) out.push_back(compose(q, images));
    return out;
  };
  auto inequalities = substitute(p.inequalities);
  inequalities.insert(inequalities.end(), bound_constraints.begin(), bound_constraints.end());
  // Re-index descriptors 1..N inside the decision block.
  std::vector<VarDescriptor> vars = target->variables();
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i].index = i + 1;
  auto indexed = std::make_shared<const VarContext>(vars);
  auto rebind = [&](std::vector<Polynomial> polys) {
    for (auto& q : polys) q = embed_by_name(q, indexed);
    return polys;
  };
  return make_problem(indexed, rebind(substitute(p.objectives)), rebind(std::move(inequalities)),
                      rebind(substitute(p.equalities)));
}

std::vector<Rational> decode_binarized(std::span<const Rational> bits, std::span<const std::uint64_t> bounds) {
  std::vector<Rational> out;
  std::size_t next = 0;
  for (auto u : bounds) {
    Rational value(0);
    for (std::size_t j = 0; j < binary_width(u); ++j) {
      if (next >= bits.size()) throw ProblemError("binarized point is too short");
      value += bits[next++] * Rational(Integer(1) << static_cast<mp_bitcnt_t>(j));
    }
    out.push_back(value);
  }
  if (next != bits.size()) throw ProblemError("binarized point is too long");
  return out;
}

ProblemInstance slack_transform(const ProblemInstance& p, SlackMode mode) {
  if (mode == SlackMode::keep || p.inequalities.empty()) return p;
  std::vector<VarDescriptor> vars = p.context->variables();
  const std::size_t first_slack = p.slack_count();
  for (std::size_t j = 0; j < p.m(); ++j) {
    vars.push_back({"w" + std::to_string(first_slack + j + 1), VarRole::slack, first_slack + j + 1});
  }
  auto ctx = std::make_shared<const VarContext>(std::move(vars));
  ProblemInstance out;
  out.context = ctx;
  out.n = p.n;
  out.bounds = p.bounds;
  for (const auto& f : p.objectives) out.objectives.push_back(embed_by_name(f, ctx));
  for (const auto& h : p.equalities) out.equalities.push_back(embed_by_name(h, ctx));
  const std::size_t base = p.context->size();
  for (std::size_t j = 0; j < p.m(); ++j) {
    out.equalities.push_back(embed_by_name(p.inequalities[j], ctx) + Polynomial::variable(ctx, base + j));
  }
  return out;
}

Rational lower_bound(const Polynomial& f) {
  Rational sum(0);
  for (const auto& t : f.terms()) {
    if (sgn(t.coeff) < 0) sum += t.coeff;
  }
  return sum;
}

namespace {

std::vector<std::size_t> reversed_order(const ContextPtr& ctx) {
  std::vector<std::size_t> order(ctx->size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = ctx->size() - 1 - i;
  return order;
}

std::vector<Polynomial> embed_all(std::span<const Polynomial> polys, const ContextPtr& ctx) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& q : polys) out.push_back(embed_by_name(q, ctx));
  return out;
}

void append_binary_relations(std::vector<Polynomial>& gens, const ContextPtr& ctx, std::span<const std::size_t> xs) {
  for (auto i : xs) gens.push_back(Polynomial::variable(ctx, i, 2) - Polynomial::variable(ctx, i));
}

void fill_roles(TransformedSystem& ts) {
  ts.solve_order = reversed_order(ts.context);
  ts.decision_vars = ts.context->block(VarRole::decision);
  ts.objective_vars = ts.context->block(VarRole::objective);
  ts.slack_vars = ts.context->block(VarRole::slack);
}

/// Which multiplier blocks a conditions system carries.
struct ConditionsLayout {
  bool lambda0 = false;
  bool omega = true;
  bool gamma = true;
};

// Variables of the conditions systems, greatest first:
// beta > mu > lambda0 > nu > lambda > omega > gamma > slacks > x.
struct ConditionsRing {
  ContextPtr ctx;
  ProblemInstance problem;  // slack-transformed source problem
  std::vector<Polynomial> f, g, h;
  std::vector<Polynomial> beta, mu, nu, lambda, omega;
  std::optional<Polynomial> lambda0, gamma;
  std::vector<std::size_t> xs;
};

ConditionsRing make_conditions_ring(const ProblemInstance& p, SlackMode mode, const ConditionsLayout& layout) {
  if (!p.is_binary()) throw ProblemError("condition systems need a binary problem");
  ConditionsRing ring;
  ring.problem = slack_transform(p, mode);
  const auto& q = ring.problem;
  ContextBuilder b;
  b.add_block("beta", VarRole::beta, q.n);
  b.add_block("mu", VarRole::mu, q.s());
  if (layout.lambda0) b.add("lambda0", VarRole::lambda0, 0);
  b.add_block("nu", VarRole::nu, q.k());
  b.add_block("lambda", VarRole::lambda, q.m());
  if (layout.omega) b.add_block("omega", VarRole::omega, q.k());
  if (layout.gamma) b.add("gamma", VarRole::gamma, 1);
  for (const auto& v : q.context->variables()) {
    if (v.role == VarRole::slack) b.add(v.name, v.role, v.index);
  }
  for (const auto& v : q.context->variables()) {
    if (v.role == VarRole::decision) b.add(v.name, v.role, v.index);
  }
  ring.ctx = b.build();
  const auto& ctx = ring.ctx;
  auto block = [&](VarRole role) {
    std::vector<Polynomial> out;
    for (auto i : ctx->block(role)) out.push_back(Polynomial::variable(ctx, i));
    return out;
  };
  ring.beta = block(VarRole::beta);
  ring.mu = block(VarRole::mu);
  ring.nu = block(VarRole::nu);
  ring.lambda = block(VarRole::lambda);
  ring.omega = block(VarRole::omega);
  if (layout.lambda0) ring.lambda0 = Polynomial::variable(ctx, "lambda0");
  if (layout.gamma) ring.gamma = Polynomial::variable(ctx, "gamma");
  ring.f = embed_all(q.objectives, ctx);
  ring.g = embed_all(q.inequalities, ctx);
  ring.h = embed_all(q.equalities, ctx);
  for (std::size_t l = 0; l < q.n; ++l) ring.xs.push_back(ctx->index_of((*q.context)[l].name));
  return ring;
}

Polynomial sum_of(std::span<const Polynomial> polys, const ContextPtr& ctx) {
  Polynomial s(ctx);
  for (const auto& q : polys) s = s + q;
  return s;
}

Polynomial sum_of_squares(std::span<const Polynomial> polys, const ContextPtr& ctx) {
  Polynomial s(ctx);
  for (const auto& q : polys) s = s + q * q;
  return s;
}

// sum_i nu_i [omega_i] df_i/dx_l + sum_j lambda_j dg_j/dx_l + sum_r mu_r dh_r/dx_l + beta_l (2 x_l - 1)
std::vector<Polynomial> stationarity(const ConditionsRing& r, bool weighted) {
  const auto& ctx = r.ctx;
  std::vector<Polynomial> out;
  for (std::size_t l = 0; l < r.xs.size(); ++l) {
    const std::size_t x = r.xs[l];
    Polynomial e(ctx);
    for (std::size_t i = 0; i < r.f.size(); ++i) {
      Polynomial weight = weighted ? r.nu[i] * r.omega[i] : r.nu[i];
      e = e + weight * partial_derivative(r.f[i], x);
    }
    for (std::size_t j = 0; j < r.g.size(); ++j) e = e + r.lambda[j] * partial_derivative(r.g[j], x);
    for (std::size_t t = 0; t < r.h.size(); ++t) e = e + r.mu[t] * partial_derivative(r.h[t], x);
    e = e + r.beta[l] * (Rational(2) * Polynomial::variable(ctx, x) - Polynomial::constant(ctx, Rational(1)));
    out.push_back(std::move(e));
  }
  return out;
}

void append_complementarity(std::vector<Polynomial>& gens, const ConditionsRing& r) {
  for (std::size_t j = 0; j < r.g.size(); ++j) gens.push_back(r.lambda[j] * r.g[j]);
}

Polynomial chebyshev_gap(const ConditionsRing& r, std::size_t i) {
  // omega_i (f_i - yhat_i) - gamma
  const Polynomial shifted = r.f[i] - Polynomial::constant(r.ctx, lower_bound(r.f[i]));
  return r.omega[i] * shifted - *r.gamma;
}

TransformedSystem finish_conditions(SystemKind kind, ConditionsRing&& r, std::vector<Polynomial> gens) {
  TransformedSystem ts{kind, r.ctx, Ideal(r.ctx, std::move(gens)), {}, {}, {}, {}, {}};
  fill_roles(ts);
  for (auto role : {VarRole::nu, VarRole::lambda, VarRole::lambda0, VarRole::slack}) {
    for (auto i : r.ctx->block(role)) ts.sign_filters.push_back(i);
  }
  std::sort(ts.sign_filters.begin(), ts.sign_filters.end());
  return ts;
}

}  // namespace

TransformedSystem build_alg1(const ProblemInstance& p, SlackMode mode) {
  if (!p.is_binary()) throw ProblemError("alg1 needs a binary problem");
  const ProblemInstance q = slack_transform(p, mode);
  ContextBuilder b;
  for (const auto& v : q.context->variables()) {
    if (v.role == VarRole::decision) b.add(v.name, v.role, v.index);
  }
  b.add_block("y", VarRole::objective, q.k());
  for (const auto& v : q.context->variables()) {
    if (v.role == VarRole::slack) b.add(v.name, v.role, v.index);
  }
  ContextPtr ctx = b.build();
  std::vector<Polynomial> gens;
  // Equalities first; in linear mode the slack equalities sit at the end of this list.
  const std::size_t original_s = p.s();
  for (std::size_t r = 0; r < original_s; ++r) gens.push_back(embed_by_name(q.equalities[r], ctx));
  for (std::size_t j = 0; j < q.k(); ++j) {
    gens.push_back(Polynomial::variable(ctx, "y" + std::to_string(j + 1)) - embed_by_name(q.objectives[j], ctx));
  }
  for (std::size_t r = original_s; r < q.s(); ++r) gens.push_back(embed_by_name(q.equalities[r], ctx));
  const auto xs = ctx->block(VarRole::decision);
  append_binary_relations(gens, ctx, xs);
  TransformedSystem ts{SystemKind::alg1, ctx, Ideal(ctx, std::move(gens)), {}, {}, {}, {}, {}};
  fill_roles(ts);
  ts.sign_filters = ts.slack_vars;
  return ts;
}

TransformedSystem build_kkt(const ProblemInstance& p, SlackMode mode) {
  auto r = make_conditions_ring(p, mode, {});
  const auto& ctx = r.ctx;
  std::vector<Polynomial> gens;
  gens.push_back(Polynomial::constant(ctx, Rational(1)) - sum_of(r.nu, ctx));
  for (auto& e : stationarity(r, true)) gens.push_back(std::move(e));
  for (std::size_t i = 0; i < r.f.size(); ++i) {
    // nu_i omega_i (f_i - yhat_i) - gamma
    const Polynomial shifted = r.f[i] - Polynomial::constant(ctx, lower_bound(r.f[i]));
    gens.push_back(r.nu[i] * r.omega[i] * shifted - *r.gamma);
  }
  append_complementarity(gens, r);
  for (const auto& h : r.h) gens.push_back(h);
  append_binary_relations(gens, ctx, r.xs);
  return finish_conditions(SystemKind::kkt, std::move(r), std::move(gens));
}

TransformedSystem build_nr(const ProblemInstance& p, SlackMode mode) {
  auto r = make_conditions_ring(p, mode, {});
  const auto& ctx = r.ctx;
  std::vector<Polynomial> gens;
  gens.push_back(sum_of(r.nu, ctx));
  for (auto& e : stationarity(r, true)) gens.push_back(std::move(e));
  append_complementarity(gens, r);
  for (const auto& h : r.h) gens.push_back(h);
  append_binary_relations(gens, ctx, r.xs);
  gens.push_back(sum_of(r.lambda, ctx) + sum_of_squares(r.mu, ctx) + sum_of_squares(r.beta, ctx) -
                 Polynomial::constant(ctx, Rational(1)));
  return finish_conditions(SystemKind::nr, std::move(r), std::move(gens));
}

TransformedSystem build_fj(const ProblemInstance& p, SlackMode mode) {
  auto r = make_conditions_ring(p, mode, {.lambda0 = true});
  const auto& ctx = r.ctx;
  std::vector<Polynomial> gens;
  gens.push_back(*r.lambda0 - sum_of(r.nu, ctx));
  for (auto& e : stationarity(r, true)) gens.push_back(std::move(e));
  for (std::size_t i = 0; i < r.f.size(); ++i) gens.push_back(r.nu[i] * chebyshev_gap(r, i));
  append_complementarity(gens, r);
  for (const auto& h : r.h) gens.push_back(h);
  append_binary_relations(gens, ctx, r.xs);
  gens.push_back(*r.lambda0 + sum_of(r.lambda, ctx) + sum_of(r.nu, ctx) + sum_of_squares(r.mu, ctx) +
                 sum_of_squares(r.beta, ctx) - Polynomial::constant(ctx, Rational(1)));
  return finish_conditions(SystemKind::fj, std::move(r), std::move(gens));
}

TransformedSystem build_mofj(const ProblemInstance& p, SlackMode mode) {
  auto r = make_conditions_ring(p, mode, {.lambda0 = false, .omega = false, .gamma = false});
  const auto& ctx = r.ctx;
  std::vector<Polynomial> gens;
  for (auto& e : stationarity(r, false)) gens.push_back(std::move(e));
  append_complementarity(gens, r);
  for (const auto& h : r.h) gens.push_back(h);
  append_binary_relations(gens, ctx, r.xs);
  gens.push_back(sum_of(r.nu, ctx) + sum_of(r.lambda, ctx) + sum_of_squares(r.mu, ctx) + sum_of_squares(r.beta, ctx) -
                 Polynomial::constant(ctx, Rational(1)));
  return finish_conditions(SystemKind::mofj, std::move(r), std::move(gens));
}

SystemStats system_stats(const TransformedSystem& ts) {
  SystemStats s;
  s.n_vars = ts.context->size();
  s.n_gens = ts.generators.generators().size();
  for (const auto& g : ts.generators.generators()) s.max_deg = std::max(s.max_deg, g.total_degree());
  return s;
}

}  // namespace mopip
