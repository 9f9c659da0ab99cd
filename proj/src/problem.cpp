#include "mopip/problem.hpp"

namespace mopip {

namespace {

void check_context(const ContextPtr& ctx, std::span<const Polynomial> polys, const char* what) {
  for (const auto& p : polys) {
    if (!same_context(p.context(), ctx)) throw ProblemError(std::string(what) + " polynomial uses a different context");
  }
}

std::vector<Rational> full_point(std::span<const Rational> x, const ProblemInstance& p) {
  if (x.size() == p.context->size()) return {x.begin(), x.end()};
  if (x.size() == p.n && p.slack_count() == 0) return {x.begin(), x.end()};
  throw ProblemError("point has " + std::to_string(x.size()) + " entries, expected " + std::to_string(p.n));
}

}  // namespace

bool ProblemInstance::operator==(const ProblemInstance& other) const {
  return same_context(context, other.context) && n == other.n && objectives == other.objectives &&
         inequalities == other.inequalities && equalities == other.equalities && bounds == other.bounds;
}

ProblemInstance make_problem(ContextPtr context, std::vector<Polynomial> objectives,
                             std::vector<Polynomial> inequalities, std::vector<Polynomial> equalities,
                             std::optional<std::vector<std::uint64_t>> bounds) {
  if (!context) throw ProblemError("missing context");
  if (objectives.empty()) throw ProblemError("at least one objective is required");
  check_context(context, objectives, "objective");
  check_context(context, inequalities, "inequality");
  check_context(context, equalities, "equality");
  for (const auto& v : context->variables()) {
    if (v.role != VarRole::decision) throw ProblemError("problem context may only hold decision variables");
  }
  if (bounds && bounds->size() != context->size()) throw ProblemError("one bound per decision variable is required");
  ProblemInstance p;
  p.n = context->size();
  p.context = std::move(context);
  p.objectives = std::move(objectives);
  p.inequalities = std::move(inequalities);
  p.equalities = std::move(equalities);
  p.bounds = std::move(bounds);
  return p;
}

bool check_feasible(std::span<const Rational> x, const ProblemInstance& p) {
  const auto point = full_point(x, p);
  for (const auto& g : p.inequalities) {
    if (sgn(evaluate_at(g, point)) > 0) return false;
  }
  for (const auto& h : p.equalities) {
    if (sgn(evaluate_at(h, point)) != 0) return false;
  }
  return true;
}

std::vector<Rational> evaluate_objectives(std::span<const Rational> x, const ProblemInstance& p) {
  const auto point = full_point(x, p);
  std::vector<Rational> out;
  out.reserve(p.k());
  for (const auto& f : p.objectives) out.push_back(evaluate_at(f, point));
  return out;
}

std::vector<Rational> to_point(std::span<const int> bits) {
  std::vector<Rational> out;
  out.reserve(bits.size());
  for (int b : bits) out.emplace_back(b);
  return out;
}

}  // namespace mopip
