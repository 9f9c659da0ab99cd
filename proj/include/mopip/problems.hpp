#pragma once

#include "mopip/problem.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mopip {

enum class Family { biobj_linkn, biobj_qkn, biobj_cubkn, triobj_linkn, triobj_qkn, triobj_cubkn, portfolio };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
const std::vector<Family>& all_families();

/// Objectives per family and polynomial degree of each objective.
std::size_t objective_count(Family f);
unsigned objective_degree(Family f);
/// Smallest n a family accepts.
std::size_t min_items(Family f);

struct FamilySpec {
  Family family;
  std::size_t n;
  std::uint64_t seed;

  bool operator==(const FamilySpec&) const = default;
};

/// Integer data an instance was built from, stored dense. Unused blocks stay
/// empty; entries outside the drawn index ranges are zero.
struct RawData {
  std::vector<long> a;
  long b = 0;
  std::vector<std::vector<long>> q;                            // [objective][i]
  std::vector<std::vector<std::vector<long>>> Q;               // [objective][i][j], drawn for i <= j
  std::vector<std::vector<std::vector<std::vector<long>>>> P;  // [objective][i][j][l], drawn for i < j < l
  std::vector<long> mu;
  std::vector<std::vector<long>> sigma;  // symmetric

  bool operator==(const RawData&) const = default;
};

struct GeneratedInstance {
  std::optional<FamilySpec> spec;
  ProblemInstance problem;
  std::optional<RawData> raw;

  bool operator==(const GeneratedInstance&) const = default;
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [lo, hi] by rejection sampling.
  long uniform(long lo, long hi);

 private:
  std::uint64_t state_;
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic instance of a family.
///
/// Draw order: a_1..a_n (redrawn as a whole while sum a = 0); per objective
/// either q_1..q_n, or Q_ij for i <= j row by row followed by P_ijl for
/// i < j < l; for the portfolio sigma_ij for i <= j row by row then mu_1..mu_n;
/// finally b in [1, |sum a|]. All other draws are in [-10, 10].
GeneratedInstance generate(const FamilySpec& spec);

/// Malformed instance text; the message names the location.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON with sorted keys; polynomials as term lists {"coeff": "num/den", "exps": [...]}.
std::string serialize(const GeneratedInstance& inst);

/// Accepts the serialized form; polynomials may also be written as expression strings over x1..xn.
GeneratedInstance deserialize(std::string_view text);

}  // namespace mopip
