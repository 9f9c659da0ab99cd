#include "mopip/var_context.hpp"

namespace mopip {

std::string_view role_name(VarRole role) {
  switch (role) {
    case VarRole::decision: return "x";
    case VarRole::objective: return "y";
    case VarRole::slack: return "w";
    case VarRole::gamma: return "gamma";
    case VarRole::nu: return "nu";
    case VarRole::lambda: return "lambda";
    case VarRole::mu: return "mu";
    case VarRole::beta: return "beta";
    case VarRole::omega: return "omega";
    case VarRole::lambda0: return "lambda0";
  }
  return "?";
}

VarContext::VarContext(std::vector<VarDescriptor> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVariables) {
    throw ContextError("context has " + std::to_string(vars_.size()) + " variables, limit is " +
                       std::to_string(kMaxVariables));
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name.empty()) throw ContextError("empty variable name");
    if (!by_name_.emplace(vars_[i].name, i).second) {
      throw ContextError("duplicate variable name '" + vars_[i].name + "'");
    }
  }
}

std::optional<std::size_t> VarContext::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarContext::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ContextError("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> VarContext::block(VarRole role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].role == role) out.push_back(i);
  }
  return out;
}

ContextPtr make_decision_context(std::size_t n, std::string_view prefix) {
  return ContextBuilder{}.add_block(prefix, VarRole::decision, n).build();
}

ContextBuilder& ContextBuilder::add(std::string name, VarRole role, std::size_t index) {
  vars_.push_back({std::move(name), role, index});
  return *this;
}

ContextBuilder& ContextBuilder::add_block(std::string_view prefix, VarRole role, std::size_t count) {
  for (std::size_t i = 1; i <= count; ++i) add(std::string(prefix) + std::to_string(i), role, i);
  return *this;
}

ContextPtr ContextBuilder::build() const { return std::make_shared<const VarContext>(vars_); }

}  // namespace mopip
