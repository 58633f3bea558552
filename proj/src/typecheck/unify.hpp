#pragma once

#include <set>
#include <unordered_map>

#include "typecheck/types.hpp"

namespace eff::types {

class Substitution {
 public:
  // Follows variable bindings until reaching an unbound variable or a
  // non-variable node.
  TypePtr resolve(TypePtr t) const;
  // Applies the substitution everywhere.
  TypePtr zonk(const TypePtr& t) const;
  void bind(int id, TypePtr t) { map_[id] = std::move(t); }
  bool occurs(int id, const TypePtr& t) const;
  void free_vars(const TypePtr& t, std::set<int>& out) const;

 private:
  std::unordered_map<int, TypePtr> map_;
};

// Extends `s` to a most general unifier of a and b, or throws TypeError
// (Mismatch / OccursCheck) naming the innermost clashing pair.
void unify(Substitution& s, const TypePtr& a, const TypePtr& b, Span span);

}  // namespace eff::types
