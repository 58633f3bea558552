#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "desugar/core.hpp"
#include "typecheck/types.hpp"
#include "typecheck/unify.hpp"

namespace eff::typecheck {

using types::Scheme;
using types::TypePtr;

struct BuiltinSignature {
  const char* name;
  const char* type;  // surface type syntax
};

// Primitive functions every session starts with (the runtime implements
// exactly these names).
const std::vector<BuiltinSignature>& builtin_signatures();

// Hindley-Milner inference over core items with the value restriction.
// Global state survives across items; a failing item leaves it untouched.
class Checker {
 public:
  Checker();

  // Returns the zonked type of a Run item, nullptr for other items.
  TypePtr check_item(const core::Item& item);

  // Standalone inference in the current global context; commits nothing.
  TypePtr infer(const core::Comp& c);
  TypePtr infer(const core::Expr& e);

  std::optional<Scheme> global(const std::string& name) const;
  // Printed type of a global, e.g. "'a list -> int".
  std::string global_type(const std::string& name) const;

 private:
  struct Local;
  using Locals = std::shared_ptr<const Local>;
  struct Local {
    std::string name;
    Scheme scheme;
    Locals next;
  };

  struct EffectSig {
    std::vector<std::string> params;
    std::vector<syntax::EffectOp> ops;
    int stamp = 0;
    const syntax::EffectOp* find(const std::string& op) const;
  };

  struct VariantSig {
    std::vector<std::string> params;
    std::vector<syntax::CtorDecl> ctors;
  };

  using TypeVars = std::map<std::string, TypePtr>;

  TypePtr fresh() { return types::var(next_var_++); }

  // Items
  void declare(const syntax::TypeDecl& d);
  void commit(std::vector<std::pair<std::string, Scheme>> bindings);
  void begin_item();

  // Judgements
  TypePtr infer_expr(const Locals& ctx, const core::Expr& e);
  TypePtr infer_comp(const Locals& ctx, const core::Comp& c);
  TypePtr infer_pattern(const syntax::Pattern& p, std::vector<std::pair<std::string, TypePtr>>& binds);
  TypePtr operation_type(const TypePtr& instance, const std::string& op, Span span,
                         TypePtr* param = nullptr, TypePtr* result = nullptr);
  TypePtr infer_handler(const Locals& ctx, const core::Expr::Handler& h);
  TypePtr constructor_type(const std::string& ctor, TypePtr* arg, Span span);

  // Context
  std::optional<Scheme> lookup(const Locals& ctx, const std::string& name) const;
  Locals extend(Locals ctx, const std::vector<std::pair<std::string, TypePtr>>& binds,
                bool generalize);
  Scheme generalize(const Locals& ctx, const TypePtr& t) const;
  TypePtr instantiate(const Scheme& s);
  void unify(const TypePtr& a, const TypePtr& b, Span span) { types::unify(subst_, a, b, span); }

  // Type expressions
  TypePtr convert(const syntax::TypeExpr& t, TypeVars& vars, bool allow_new);
  TypePtr convert_annotation(const syntax::TypeExprPtr& t) {
    return convert(*t, annotation_vars_, true);
  }

  std::unordered_map<std::string, Scheme> globals_;
  std::set<std::string> weak_globals_;  // globals whose types have free variables
  std::unordered_map<std::string, std::size_t> type_arity_;
  std::unordered_map<std::string, EffectSig> effects_;
  std::unordered_map<std::string, VariantSig> variants_;
  std::unordered_map<std::string, std::string> ctor_owner_;  // constructor -> type

  types::Substitution subst_;
  TypeVars annotation_vars_;
  int next_var_ = 0;
  int next_stamp_ = 0;
};

}  // namespace eff::typecheck
