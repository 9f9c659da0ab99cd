#include "mopip/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace mopip {

namespace {

using json = nlohmann::json;

std::string rational_text(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

json point_json(const Point& p) {
  json out = json::array();
  for (const auto& v : p) out.push_back(rational_text(v));
  return out;
}

long millis(std::chrono::nanoseconds d) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

int report(std::ostream& err, const std::string& kind, const std::string& what, int code = kExitUsage) {
  err << "error: " << kind << ": " << one_line(what) << "\n";
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

SolveOptions make_options(std::optional<std::uint64_t> budget, GroebnerEngine engine) {
  SolveOptions o;
  o.buchberger = budget_options(budget);
  o.engine = engine;
  return o;
}

const std::vector<Algorithm> kPipelines{Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl,
                                        Algorithm::fj,   Algorithm::fj_sl, Algorithm::mofj};

}  // namespace

BuchbergerOptions budget_options(std::optional<std::uint64_t> flag) {
  BuchbergerOptions o;
  if (flag) {
    o.max_steps = *flag;
  } else if (const char* env = std::getenv("MOPIP_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw std::invalid_argument(std::string("MOPIP_BUDGET is not a step count: ") + env);
    o.max_steps = v;
  }
  return o;
}

RunOutcome run_algorithm(const GeneratedInstance& inst, Algorithm algorithm, const SolveOptions& options) {
  RunOutcome o;
  auto& r = o.record;
  if (inst.spec) {
    r.family = family_name(inst.spec->family);
    r.seed = inst.spec->seed;
  }
  r.n = inst.problem.n;
  r.algorithm = algorithm_name(algorithm);
  SolveMetrics m;
  try {
    o.result = solve(inst.problem, algorithm, options, &m);
    r.status = o.result->status == SolveStatus::solved ? "solved" : "infeasible";
    r.n_nondominated = o.result->nondominated.size();
  } catch (const ResourceLimitExceeded& e) {
    r.status = "budget_exceeded";
    o.error = e.what();
  } catch (const std::exception& e) {
    r.status = "error";
    o.error = e.what();
  }
  r.gb_millis = millis(m.gb_time);
  r.total_millis = std::max(millis(m.total_time), r.gb_millis);
  if (!m.systems.empty()) {
    r.n_vars = m.systems.front().n_vars;
    r.n_gens = m.systems.front().n_gens;
    r.max_deg = m.systems.front().max_deg;
  } else {
    r.n_vars = inst.problem.n;
  }
  return o;
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream s;
  s << r.family << ',' << r.n << ',' << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.algorithm << ','
    << r.gb_millis << ',' << r.total_millis << ',' << r.n_vars << ',' << r.n_gens << ',' << r.max_deg << ','
    << r.n_nondominated << ',' << r.status;
  return s.str();
}

std::string result_document(const RunOutcome& outcome) {
  const auto& r = outcome.record;
  json rec{{"family", r.family.empty() ? json(nullptr) : json(r.family)},
           {"n", r.n},
           {"seed", r.seed ? json(*r.seed) : json(nullptr)},
           {"algorithm", r.algorithm},
           {"gb_millis", r.gb_millis},
           {"total_millis", r.total_millis},
           {"n_vars", r.n_vars},
           {"n_gens", r.n_gens},
           {"max_deg", r.max_deg},
           {"n_nondominated", r.n_nondominated},
           {"status", r.status}};
  json doc{{"status", r.status}, {"record", rec}};
  json nd = json::array();
  json eff = json::array();
  if (outcome.result) {
    for (const auto& y : outcome.result->nondominated) nd.push_back(point_json(y));
    for (const auto& e : outcome.result->efficient) {
      eff.push_back({{"x", point_json(e.x)}, {"y", point_json(e.y)}, {"source", provenance_name(e.source)}});
    }
  }
  doc["nondominated"] = nd;
  doc["efficient"] = eff;
  if (!outcome.error.empty()) doc["error"] = outcome.error;
  return doc.dump(2) + "\n";
}

int cmd_solve(const SolveCommand& c, std::ostream& out, std::ostream& err) {
  GeneratedInstance inst;
  SolveOptions options;
  try {
    inst = deserialize(read_file(c.input));
    options = make_options(c.budget, c.engine);
  } catch (const FormatError& e) {
    return report(err, "parse", e.what());
  } catch (const std::exception& e) {
    return report(err, "usage", e.what());
  }
  options.slack_mode = c.slack_mode;
  const auto outcome = run_algorithm(inst, c.algorithm, options);
  try {
    write_output(c.output, result_document(outcome), out);
  } catch (const std::exception& e) {
    return report(err, "io", e.what());
  }
  const auto& status = outcome.record.status;
  if (status == "solved") return kExitSolved;
  if (status == "infeasible") return kExitInfeasible;
  if (status == "budget_exceeded") return report(err, "budget", outcome.error, kExitBudget);
  return report(err, "solver", outcome.error);
}

int cmd_gen(const GenCommand& c, std::ostream& out, std::ostream& err) {
  try {
    write_output(c.output, serialize(generate({c.family, c.n, c.seed})), out);
  } catch (const SpecError& e) {
    return report(err, "usage", e.what());
  } catch (const std::exception& e) {
    return report(err, "io", e.what());
  }
  return kExitSolved;
}

int cmd_verify(const VerifyCommand& c, std::ostream& out, std::ostream& err) {
  GeneratedInstance inst;
  SolveOptions options;
  try {
    inst = deserialize(read_file(c.input));
    options = make_options(c.budget, c.engine);
  } catch (const FormatError& e) {
    return report(err, "parse", e.what());
  } catch (const std::exception& e) {
    return report(err, "usage", e.what());
  }
  ParetoResult reference;
  try {
    reference = brute_force(inst.problem, options);
  } catch (const std::invalid_argument& e) {
    return report(err, "usage", e.what());
  }
  const auto& algorithms = c.algorithms.empty() ? kPipelines : c.algorithms;
  int code = kExitSolved;
  for (auto a : algorithms) {
    const auto outcome = run_algorithm(inst, a, options);
    std::string verdict;
    if (outcome.record.status == "budget_exceeded") {
      verdict = "budget_exceeded";
      code = std::max(code, kExitBudget);
    } else if (!outcome.result) {
      verdict = "error";
      code = std::max(code, kExitMismatch);
    } else if (outcome.result->nondominated == reference.nondominated &&
               outcome.result->efficient_set() == reference.efficient_set()) {
      verdict = "ok";
    } else {
      verdict = "mismatch";
      code = std::max(code, kExitMismatch);
    }
    out << algorithm_name(a) << ' ' << verdict << '\n';
  }
  if (code == kExitMismatch) return report(err, "verify", "pipeline result differs from brute force", code);
  if (code == kExitBudget) return report(err, "budget", "step budget exceeded", code);
  return code;
}

int cmd_bench(const BenchCommand& c, std::ostream& out, std::ostream& err) {
  if (c.n_min > c.n_max) return report(err, "usage", "--n-min exceeds --n-max");
  SolveOptions options;
  try {
    options = make_options(c.budget, c.engine);
  } catch (const std::exception& e) {
    return report(err, "usage", e.what());
  }
  const auto& algorithms =
      c.algorithms.empty() ? std::vector<Algorithm>{Algorithm::alg1, Algorithm::kkt, Algorithm::kkt_sl, Algorithm::fj,
                                                    Algorithm::fj_sl, Algorithm::mofj, Algorithm::brute}
                           : c.algorithms;
  std::vector<FamilySpec> specs;
  for (auto f : c.families) {
    for (std::size_t n = std::max(c.n_min, min_items(f)); n <= c.n_max; ++n) {
      for (std::uint64_t s = 1; s <= c.seeds; ++s) specs.push_back({f, n, s});
    }
  }

  std::vector<std::vector<RunRecord>> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      const auto inst = generate(specs[i]);
      for (auto a : algorithms) rows[i].push_back(run_algorithm(inst, a, options).record);
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(c.jobs, static_cast<unsigned>(specs.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream text;
  bool header = true;
  if (!c.csv.empty()) {
    std::ifstream existing(c.csv, std::ios::binary | std::ios::ate);
    header = !existing || existing.tellg() == 0;
  }
  if (header) text << kCsvHeader << '\n';
  for (const auto& group : rows) {
    for (const auto& r : group) text << csv_row(r) << '\n';
  }
  if (c.csv.empty()) {
    out << text.str();
  } else {
    std::ofstream f(c.csv, std::ios::binary | std::ios::app);
    if (!f) return report(err, "io", "cannot write " + c.csv);
    f << text.str();
  }
  return kExitSolved;
}

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

Algorithm to_algorithm(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw CLI::ValidationError("--algorithm", "unknown algorithm " + name);
  return *a;
}

Family to_family(const std::string& name) {
  auto f = parse_family(name);
  if (!f) throw CLI::ValidationError("--family", "unknown family " + name);
  return *f;
}

GroebnerEngine to_engine(const std::string& name) {
  if (name == "split") return GroebnerEngine::split;
  if (name == "direct") return GroebnerEngine::direct;
  throw CLI::ValidationError("--engine", "unknown engine " + name);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multiobjective polynomial binary programming via Groebner bases"};
  app.require_subcommand(1);

  std::string algorithm = "alg1";
  std::string slack_mode;
  std::string engine = "split";
  std::optional<std::uint64_t> budget;
  std::string input;
  std::string output;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("input", input, "Instance file")->required();
  solve_cmd->add_option("--algorithm", algorithm, "alg1|kkt|kkt_sl|fj|fj_sl|mofj|brute");
  solve_cmd->add_option("--slack-mode", slack_mode, "keep|linear");
  solve_cmd->add_option("--budget", budget, "Groebner step budget");
  solve_cmd->add_option("--engine", engine, "split|direct");
  solve_cmd->add_option("--output", output, "Result file (default stdout)");

  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--family", family, "Instance family")->required();
  gen_cmd->add_option("--n", n, "Item count")->required();
  gen_cmd->add_option("--seed", seed, "Seed")->required();
  gen_cmd->add_option("--output", output, "Instance file (default stdout)");

  std::string against = "brute";
  std::vector<std::string> algorithms;
  auto* verify_cmd = app.add_subcommand("verify", "Compare pipelines with brute force");
  verify_cmd->add_option("input", input, "Instance file")->required();
  verify_cmd->add_option("--against", against, "Reference (brute)");
  verify_cmd->add_option("--algorithms", algorithms, "Comma separated pipelines (default all)");
  verify_cmd->add_option("--budget", budget, "Groebner step budget");
  verify_cmd->add_option("--engine", engine, "split|direct");

  std::vector<std::string> families;
  BenchCommand bench;
  std::string csv;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark grid and write CSV rows");
  bench_cmd->add_option("--families", families, "Comma separated families")->required();
  bench_cmd->add_option("--n-min", bench.n_min, "Smallest n");
  bench_cmd->add_option("--n-max", bench.n_max, "Largest n");
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds 1..K per (family, n)");
  bench_cmd->add_option("--algorithms", algorithms, "Comma separated algorithms (default all)");
  bench_cmd->add_option("--budget", budget, "Groebner step budget");
  bench_cmd->add_option("--engine", engine, "split|direct");
  bench_cmd->add_option("--csv", csv, "CSV file to append to (default stdout)");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
    if (*solve_cmd) {
      SolveCommand c{input, to_algorithm(algorithm), std::nullopt, budget, to_engine(engine), output};
      if (slack_mode == "keep") {
        c.slack_mode = SlackMode::keep;
      } else if (slack_mode == "linear") {
        c.slack_mode = SlackMode::linear;
      } else if (!slack_mode.empty()) {
        throw CLI::ValidationError("--slack-mode", "expected keep or linear");
      }
      return cmd_solve(c, out, err);
    }
    if (*gen_cmd) return cmd_gen({to_family(family), n, seed, output}, out, err);
    if (*verify_cmd) {
      if (against != "brute") throw CLI::ValidationError("--against", "only brute is supported");
      VerifyCommand c{input, {}, budget, to_engine(engine)};
      for (const auto& a : split_list(algorithms)) c.algorithms.push_back(to_algorithm(a));
      return cmd_verify(c, out, err);
    }
    for (const auto& f : split_list(families)) bench.families.push_back(to_family(f));
    for (const auto& a : split_list(algorithms)) bench.algorithms.push_back(to_algorithm(a));
    bench.budget = budget;
    bench.engine = to_engine(engine);
    bench.csv = csv;
    return cmd_bench(bench, out, err);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSolved;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSolved;
  } catch (const CLI::ParseError& e) {
    return report(err, "usage", e.what());
  }
}

}  // namespace mopip
