#include <string>
#include <unordered_map>

#include "desugar/core.hpp"

namespace eff::core {
namespace {

class Resolver {
 public:
  void expr(const Expr& e) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Expr::Var>) {
            const bool local = bound_.count(x.name) && bound_[x.name] > 0;
            // A node reachable from two scopes stays conservative.
            if (local) {
              x.scope = Scope::Local;
            } else if (x.scope == Scope::Unknown) {
              x.scope = Scope::Global;
            }
          } else if constexpr (std::is_same_v<T, Expr::Tuple> || std::is_same_v<T, Expr::List>) {
            for (const auto& el : x.elems) expr(*el);
          } else if constexpr (std::is_same_v<T, Expr::Variant>) {
            if (x.arg) expr(*x.arg);
          } else if constexpr (std::is_same_v<T, Expr::Cons>) {
            expr(*x.head);
            expr(*x.tail);
          } else if constexpr (std::is_same_v<T, Expr::Lambda>) {
            scoped({x.param.get()}, *x.body);
          } else if constexpr (std::is_same_v<T, Expr::Project>) {
            expr(*x.instance);
          } else if constexpr (std::is_same_v<T, Expr::Handler>) {
            for (const auto& op : x.ops) {
              expr(*op.instance);
              scoped({op.arg.get(), op.cont.get()}, *op.body);
            }
            scoped({x.val.pattern.get()}, *x.val.body);
            scoped({x.finally.pattern.get()}, *x.finally.body);
          } else if constexpr (std::is_same_v<T, Expr::Annot>) {
            expr(*x.expr);
          }
        },
        e.node);
  }

  void comp(const Comp& c) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Comp::Val>) {
            expr(*x.expr);
          } else if constexpr (std::is_same_v<T, Comp::Let>) {
            comp(*x.bound);
            scoped({x.pattern.get()}, *x.body);
          } else if constexpr (std::is_same_v<T, Comp::LetSim>) {
            std::vector<const Pattern*> pats;
            for (const auto& [p, b] : x.bindings) {
              comp(*b);
              pats.push_back(p.get());
            }
            scoped(pats, *x.body);
          } else if constexpr (std::is_same_v<T, Comp::LetRec>) {
            rec_group(x.bindings);
            for (const auto& [name, _] : x.bindings) ++bound_[name];
            comp(*x.body);
            for (const auto& [name, _] : x.bindings) --bound_[name];
          } else if constexpr (std::is_same_v<T, Comp::If>) {
            expr(*x.cond);
            comp(*x.then_branch);
            comp(*x.else_branch);
          } else if constexpr (std::is_same_v<T, Comp::Match>) {
            expr(*x.scrutinee);
            for (const auto& mc : x.cases) scoped({mc.pattern.get()}, *mc.body);
          } else if constexpr (std::is_same_v<T, Comp::App>) {
            expr(*x.fn);
            expr(*x.arg);
          } else if constexpr (std::is_same_v<T, Comp::New>) {
            if (x.resource) {
              expr(*x.resource->initial);
              for (const auto& rc : x.resource->clauses) scoped({rc.arg.get(), rc.state.get()}, *rc.body);
            }
          } else {
            expr(*x.handler);
            comp(*x.body);
          }
        },
        c.node);
  }

  void rec_group(const std::vector<std::pair<std::string, ExprPtr>>& bindings) {
    for (const auto& [name, _] : bindings) ++bound_[name];
    for (const auto& [_, fn] : bindings) expr(*fn);
    for (const auto& [name, _] : bindings) --bound_[name];
  }

 private:
  void pattern_vars(const Pattern& p, int delta) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Pattern::Var>) {
            bound_[x.name] += delta;
          } else if constexpr (std::is_same_v<T, Pattern::Tuple> || std::is_same_v<T, Pattern::List>) {
            for (const auto& el : x.elems) pattern_vars(*el, delta);
          } else if constexpr (std::is_same_v<T, Pattern::Construct>) {
            if (x.arg) pattern_vars(*x.arg, delta);
          } else if constexpr (std::is_same_v<T, Pattern::Cons>) {
            pattern_vars(*x.head, delta);
            pattern_vars(*x.tail, delta);
          }
        },
        p.node);
  }

  void scoped(const std::vector<const Pattern*>& pats, const Comp& body) {
    for (const Pattern* p : pats) pattern_vars(*p, +1);
    comp(body);
    for (const Pattern* p : pats) pattern_vars(*p, -1);
  }

  std::unordered_map<std::string, int> bound_;
};

}  // namespace

void resolve_scopes(const Item& item) {
  Resolver r;
  if (const auto* d = std::get_if<Define>(&item)) {
    for (const auto& [_, c] : d->bindings) r.comp(*c);
  } else if (const auto* rec = std::get_if<DefineRec>(&item)) {
    r.rec_group(rec->bindings);
  } else if (const auto* run = std::get_if<Run>(&item)) {
    r.comp(*run->comp);
  }
}

void resolve_scopes(const Comp& c) { Resolver().comp(c); }

}  // namespace eff::core
