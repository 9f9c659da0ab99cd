#include "mopip/problems.hpp"

#include "mopip/parse.hpp"

#include <json.hpp>

#include <array>
#include <cstdlib>
#include <limits>

namespace mopip {

namespace {

using json = nlohmann::json;

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t k;
  unsigned degree;
};

constexpr std::array<FamilyInfo, 7> kFamilies{{
    {Family::biobj_linkn, "biobj_linkn", 2, 1},
    {Family::biobj_qkn, "biobj_qkn", 2, 2},
    {Family::biobj_cubkn, "biobj_cubkn", 2, 3},
    {Family::triobj_linkn, "triobj_linkn", 3, 1},
    {Family::triobj_qkn, "triobj_qkn", 3, 2},
    {Family::triobj_cubkn, "triobj_cubkn", 3, 3},
    {Family::portfolio, "portfolio", 2, 2},
}};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw SpecError("unknown family");
}

constexpr long kLow = -10;
constexpr long kHigh = 10;

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& i : kFamilies) {
    if (i.name == name) return i.family;
  }
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> all = [] {
    std::vector<Family> out;
    for (const auto& i : kFamilies) out.push_back(i.family);
    return out;
  }();
  return all;
}

std::size_t objective_count(Family f) { return info(f).k; }
unsigned objective_degree(Family f) { return info(f).degree; }
std::size_t min_items(Family f) { return info(f).degree == 3 ? 3 : 2; }

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long SplitMix64::uniform(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(next());
  // Reject the low 2^64 mod span values so that r % span is uniform.
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t r = next();
  while (r < threshold) r = next();
  return lo + static_cast<long>(r % span);
}

GeneratedInstance generate(const FamilySpec& spec) {
  const FamilyInfo& fi = info(spec.family);
  const std::size_t n = spec.n;
  if (n < min_items(spec.family)) {
    throw SpecError(std::string(fi.name) + " needs n >= " + std::to_string(min_items(spec.family)));
  }
  if (n > kMaxVariables) throw SpecError("n exceeds " + std::to_string(kMaxVariables));

  SplitMix64 rng(spec.seed);
  RawData raw;
  long sum = 0;
  do {
    raw.a.assign(n, 0);
    sum = 0;
    for (auto& v : raw.a) {
      v = rng.uniform(kLow, kHigh);
      sum += v;
    }
  } while (sum == 0);

  const auto ctx = make_decision_context(n);
  auto x = [&](std::size_t i) { return Monomial::variable(n, i); };
  std::vector<Polynomial> objectives;

  if (spec.family == Family::portfolio) {
    raw.sigma.assign(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) raw.sigma[i][j] = raw.sigma[j][i] = rng.uniform(kLow, kHigh);
    }
    raw.mu.assign(n, 0);
    for (auto& v : raw.mu) v = rng.uniform(kLow, kHigh);
    std::vector<Term> risk;
    std::vector<Term> ret;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) risk.push_back({x(i) * x(j), Rational(raw.sigma[i][j])});
      ret.push_back({x(i), Rational(-raw.mu[i])});
    }
    objectives.push_back(Polynomial::from_terms(ctx, std::move(risk)));
    objectives.push_back(Polynomial::from_terms(ctx, std::move(ret)));
  } else {
    for (std::size_t t = 0; t < fi.k; ++t) {
      std::vector<Term> terms;
      if (fi.degree == 1) {
        auto& q = raw.q.emplace_back(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          q[i] = rng.uniform(kLow, kHigh);
          terms.push_back({x(i), Rational(q[i])});
        }
      } else {
        auto& Q = raw.Q.emplace_back(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i; j < n; ++j) {
            Q[i][j] = rng.uniform(kLow, kHigh);
            terms.push_back({x(i) * x(j), Rational(Q[i][j])});
          }
        }
        if (fi.degree == 3) {
          auto& P = raw.P.emplace_back(n, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
              for (std::size_t l = j + 1; l < n; ++l) {
                P[i][j][l] = rng.uniform(kLow, kHigh);
                terms.push_back({x(i) * x(j) * x(l), Rational(P[i][j][l])});
              }
            }
          }
        }
      }
      objectives.push_back(Polynomial::from_terms(ctx, std::move(terms)));
    }
  }

  raw.b = rng.uniform(1, std::labs(sum));

  // Knapsack: sum a x >= b, written b - sum a x <= 0. Portfolio: sum a x <= b.
  const Rational sign = spec.family == Family::portfolio ? Rational(1) : Rational(-1);
  std::vector<Term> g{{Monomial(n), -sign * Rational(raw.b)}};
  for (std::size_t i = 0; i < n; ++i) g.push_back({x(i), sign * Rational(raw.a[i])});

  GeneratedInstance out;
  out.spec = spec;
  out.problem = make_problem(ctx, std::move(objectives), {Polynomial::from_terms(ctx, std::move(g))});
  out.raw = std::move(raw);
  return out;
}

namespace {

std::string rational_text(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

json poly_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"coeff", rational_text(t.coeff)}, {"exps", t.monomial.exponents()}});
  }
  return terms;
}

json polys_to_json(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(poly_to_json(p));
  return out;
}

json raw_to_json(const RawData& r) {
  return json{{"a", r.a}, {"b", r.b}, {"q", r.q}, {"Q", r.Q}, {"P", r.P}, {"mu", r.mu}, {"sigma", r.sigma}};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw FormatError((path.empty() ? std::string("/") : path) + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

template <class T>
T get_as(const json& j, const std::string& path, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(path, std::string("expected ") + what);
  }
}

Polynomial poly_from_json(const json& j, const ContextPtr& ctx, const std::string& path) {
  const std::size_t n = ctx->size();
  if (j.is_string()) {
    try {
      return parse_expression(j.get<std::string>(), ctx);
    } catch (const ParseError& e) {
      fail(path, e.what());
    } catch (const ContextError& e) {
      fail(path, e.what());
    }
  }
  if (!j.is_array()) fail(path, "expected a term list or an expression string");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "/" + std::to_string(i);
    const json& t = j[i];
    if (!t.is_object()) fail(tp, "expected a term object");
    const auto ctext = get_as<std::string>(member(t, tp, "coeff"), tp + "/coeff", "a \"num/den\" string");
    Rational c;
    try {
      c = parse_rational(ctext);
    } catch (const std::exception& e) {
      fail(tp + "/coeff", e.what());
    }
    const auto exps = get_as<std::vector<unsigned>>(member(t, tp, "exps"), tp + "/exps", "an array of exponents");
    if (exps.size() != n) fail(tp + "/exps", "expected " + std::to_string(n) + " exponents");
    for (unsigned e : exps) {
      if (e > Monomial::kMaxExponent) fail(tp + "/exps", "exponent too large");
    }
    terms.push_back({Monomial(n, exps), c});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

std::vector<Polynomial> polys_from_json(const json& doc, const ContextPtr& ctx, const char* key, bool required) {
  const std::string path = std::string("/") + key;
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) fail("", std::string("missing field \"") + key + "\"");
    return {};
  }
  if (!it->is_array()) fail(path, "expected an array of polynomials");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(poly_from_json((*it)[i], ctx, path + "/" + std::to_string(i)));
  return out;
}

RawData raw_from_json(const json& j) {
  if (!j.is_object()) fail("/raw", "expected an object");
  RawData r;
  auto read = [&](const char* key, auto& field) {
    auto it = j.find(key);
    if (it == j.end()) return;
    field = get_as<std::decay_t<decltype(field)>>(*it, std::string("/raw/") + key, "an integer array");
  };
  read("a", r.a);
  read("b", r.b);
  read("q", r.q);
  read("Q", r.Q);
  read("P", r.P);
  read("mu", r.mu);
  read("sigma", r.sigma);
  return r;
}

}  // namespace

std::string serialize(const GeneratedInstance& inst) {
  const auto& p = inst.problem;
  json doc;
  doc["n"] = p.n;
  if (inst.spec) {
    doc["family"] = family_name(inst.spec->family);
    doc["seed"] = inst.spec->seed;
  }
  doc["objectives"] = polys_to_json(p.objectives);
  doc["inequalities"] = polys_to_json(p.inequalities);
  doc["equalities"] = polys_to_json(p.equalities);
  if (p.bounds) doc["bounds"] = *p.bounds;
  if (inst.raw) doc["raw"] = raw_to_json(*inst.raw);
  return doc.dump(2) + "\n";
}

GeneratedInstance deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) fail("", "expected an object");

  const auto n = get_as<std::size_t>(member(doc, "", "n"), "/n", "a non-negative integer");
  if (n == 0 || n > kMaxVariables) fail("/n", "n must lie in 1.." + std::to_string(kMaxVariables));

  GeneratedInstance out;
  const bool has_family = doc.contains("family");
  const bool has_seed = doc.contains("seed");
  if (has_family != has_seed) fail("", "\"family\" and \"seed\" must appear together");
  if (has_family) {
    const auto name = get_as<std::string>(doc["family"], "/family", "a family name");
    const auto family = parse_family(name);
    if (!family) fail("/family", "unknown family \"" + name + "\"");
    out.spec = FamilySpec{*family, n, get_as<std::uint64_t>(doc["seed"], "/seed", "an unsigned 64-bit integer")};
  }

  const auto ctx = make_decision_context(n);
  auto objectives = polys_from_json(doc, ctx, "objectives", true);
  auto inequalities = polys_from_json(doc, ctx, "inequalities", false);
  auto equalities = polys_from_json(doc, ctx, "equalities", false);
  std::optional<std::vector<std::uint64_t>> bounds;
  if (doc.contains("bounds")) {
    bounds = get_as<std::vector<std::uint64_t>>(doc["bounds"], "/bounds", "an array of upper bounds");
  }
  try {
    out.problem = make_problem(ctx, std::move(objectives), std::move(inequalities), std::move(equalities),
                               std::move(bounds));
  } catch (const ProblemError& e) {
    fail("", e.what());
  }
  if (doc.contains("raw")) out.raw = raw_from_json(doc["raw"]);
  return out;
}

}  // namespace mopip
