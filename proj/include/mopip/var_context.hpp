#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mopip {

/// Upper bound on ring size. Monomials store exponents inline.
inline constexpr std::size_t kMaxVariables = 64;

enum class VarRole {
  decision,   // x
  objective,  // y
  slack,      // w
  gamma,
  nu,
  lambda,
  mu,
  beta,
  omega,
  lambda0,
};

std::string_view role_name(VarRole role);

struct VarDescriptor {
  std::string name;
  VarRole role;
  std::size_t index;  // 1-based position inside its block

  bool operator==(const VarDescriptor&) const = default;
};

class ContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of ring variables. Position 0 is the greatest variable under lex.
class VarContext {
 public:
  explicit VarContext(std::vector<VarDescriptor> vars);

  [[nodiscard]] std::size_t size() const noexcept { return vars_.size(); }
  [[nodiscard]] const VarDescriptor& operator[](std::size_t i) const { return vars_.at(i); }
  [[nodiscard]] const std::vector<VarDescriptor>& variables() const noexcept { return vars_; }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ContextError for unknown names.
  [[nodiscard]] std::size_t index_of(std::string_view name) const;

  /// Positions of all variables carrying `role`, in context order.
  [[nodiscard]] std::vector<std::size_t> block(VarRole role) const;

  bool operator==(const VarContext& other) const { return vars_ == other.vars_; }

 private:
  std::vector<VarDescriptor> vars_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Context x1 > x2 > ... > xn of decision variables.
ContextPtr make_decision_context(std::size_t n, std::string_view prefix = "x");

/// Builds a context block by block, greatest block first.
class ContextBuilder {
 public:
  ContextBuilder& add(std::string name, VarRole role, std::size_t index);
  /// Adds `count` variables named prefix1..prefixN.
  ContextBuilder& add_block(std::string_view prefix, VarRole role, std::size_t count);
  [[nodiscard]] ContextPtr build() const;

 private:
  std::vector<VarDescriptor> vars_;
};

}  // namespace mopip
