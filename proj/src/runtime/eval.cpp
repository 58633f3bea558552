#include <optional>
#include <utility>

#include "runtime/runtime.hpp"
#include "runtime/stack.hpp"

namespace eff::runtime {

using core::Comp;
using core::Expr;
using syntax::Pattern;

namespace {

Value literal_value(const syntax::Literal& lit) {
  return std::visit(
      [](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, syntax::Unit>) {
          return kUnit;
        } else {
          return Value(x);
        }
      },
      lit);
}

[[noreturn]] void match_failure(Span span) {
  throw RuntimeError("match failure", "no pattern matched the value", span);
}

struct LetFrame : Frame {
  LetFrame(const Pattern* p, const Comp* b, Env e) : pattern(p), body(b), env(std::move(e)) {}
  Result apply(Runtime& rt, const Value& v) const override {
    Env e = env;
    if (!rt.match(*pattern, v, e)) match_failure(pattern->span);
    return rt.eval_comp(std::move(e), body);
  }
  const Pattern* pattern;
  const Comp* body;
  Env env;
};

Result continue_let_sim(Runtime& rt, const Comp::LetSim& ls, const Env& env, std::vector<Value> done);

struct LetSimFrame : Frame {
  LetSimFrame(const Comp::LetSim* l, Env e, std::vector<Value> d)
      : let_sim(l), env(std::move(e)), done(std::move(d)) {}
  Result apply(Runtime& rt, const Value& v) const override {
    std::vector<Value> next = done;  // the frame may be resumed again
    next.push_back(v);
    return continue_let_sim(rt, *let_sim, env, std::move(next));
  }
  const Comp::LetSim* let_sim;
  Env env;
  std::vector<Value> done;
};

void bind_let_sim(Runtime& rt, const Comp::LetSim& ls, const std::vector<Value>& values, Env& env) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!rt.match(*ls.bindings[i].first, values[i], env)) match_failure(ls.bindings[i].first->span);
  }
}

// Evaluates the remaining bindings left to right. Returns the suspended
// operation if one stops the bindings; otherwise extends env.
std::optional<Result> let_sim_bindings(Runtime& rt, const Comp::LetSim& ls, Env& env, std::vector<Value> done) {
  done.reserve(ls.bindings.size());
  while (done.size() < ls.bindings.size()) {
    Result r = rt.eval_comp(env, ls.bindings[done.size()].second.get());
    if (!r.is_value()) {
      return rt.lift(std::make_shared<LetSimFrame>(&ls, env, std::move(done)), std::move(r));
    }
    done.push_back(r.value());
  }
  bind_let_sim(rt, ls, done, env);
  return std::nullopt;
}

Result continue_let_sim(Runtime& rt, const Comp::LetSim& ls, const Env& env, std::vector<Value> done) {
  Env e = env;
  if (auto op = let_sim_bindings(rt, ls, e, std::move(done))) return std::move(*op);
  return rt.eval_comp(std::move(e), ls.body.get());
}

struct ClauseFrame : Frame {
  ClauseFrame(const core::ValueClause* c, Env e) : clause(c), env(std::move(e)) {}
  Result apply(Runtime& rt, const Value& v) const override {
    Env e = env;
    if (!rt.match(*clause->pattern, v, e)) match_failure(clause->pattern->span);
    return rt.eval_comp(std::move(e), clause->body.get());
  }
  const core::ValueClause* clause;
  Env env;
};

bool is_identity(const core::ValueClause& c) {
  const auto* p = std::get_if<Pattern::Var>(&c.pattern->node);
  const auto* v = std::get_if<Comp::Val>(&c.body->node);
  if (!p || !v) return false;
  const auto* x = std::get_if<Expr::Var>(&v->expr->node);
  return x && x->name == p->name;
}

// The environment in which a closure body runs, before its parameter.
Env closure_env(const Closure& c) {
  if (!c.rec) return c.env;
  Env e = c.rec->env;
  for (const auto& [name, fn] : *c.rec->bindings) {
    const auto& lam = std::get<Expr::Lambda>(fn->node);
    e = e.bind(name, Value(std::make_shared<const Closure>(
                         Closure{lam.param.get(), lam.body.get(), c.rec->env, c.rec})));
  }
  return e;
}

Env bind_rec_group(const std::vector<std::pair<std::string, core::ExprPtr>>& bindings, const Env& env) {
  auto group = std::make_shared<const RecGroup>(RecGroup{&bindings, env});
  Closure dummy{nullptr, nullptr, env, group};
  return closure_env(dummy);
}

}  // namespace

Result BindCont::resume(Runtime& rt, const Value& w) const {
  stack_check();
  return rt.lift(frame, inner->resume(rt, w));
}

Result HandleCont::resume(Runtime& rt, const Value& w) const {
  stack_check();
  return rt.apply_handler(handler, inner->resume(rt, w));
}

Cont identity_cont() {
  static const Cont id = std::make_shared<const IdentityCont>();
  return id;
}

bool Runtime::match(const Pattern& p, const Value& v, Env& env) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          env = env.bind(x.name, v);
          return true;
        } else if constexpr (std::is_same_v<T, Pattern::Wildcard>) {
          return true;
        } else if constexpr (std::is_same_v<T, Pattern::Const>) {
          return equal(literal_value(x.value), v);
        } else if constexpr (std::is_same_v<T, Pattern::Tuple>) {
          const auto* t = v.get<TuplePtr>();
          if (!t) ill_formed(std::string("expected a tuple but got a ") + v.tag());
          if ((*t)->elems.size() != x.elems.size()) ill_formed("tuple arity mismatch");
          for (std::size_t i = 0; i < x.elems.size(); ++i) {
            if (!match(*x.elems[i], (*t)->elems[i], env)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Pattern::Construct>) {
          const auto* c = v.get<VariantPtr>();
          if (!c) ill_formed(std::string("expected a variant but got a ") + v.tag());
          if ((*c)->ctor != x.ctor) return false;
          if (!x.arg) return true;
          if (!(*c)->has_arg) ill_formed("constructor " + x.ctor + " has no argument");
          return match(*x.arg, (*c)->arg, env);
        } else if constexpr (std::is_same_v<T, Pattern::Cons>) {
          const auto* l = v.get<ListValue>();
          if (!l) ill_formed(std::string("expected a list but got a ") + v.tag());
          if (!l->cells) return false;
          return match(*x.head, l->cells->head, env) && match(*x.tail, Value(ListValue{l->cells->tail}), env);
        } else {
          const auto* l = v.get<ListValue>();
          if (!l) ill_formed(std::string("expected a list but got a ") + v.tag());
          const ListCell* cell = l->cells.get();
          for (const auto& q : x.elems) {
            if (!cell || !match(*q, cell->head, env)) return false;
            cell = cell->tail.get();
          }
          return cell == nullptr;
        }
      },
      p.node);
}

Value Runtime::eval_expr(const Env& env, const Expr& e) {
  stack_check();
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          const Value* v = x.scope == core::Scope::Global ? env.lookup_global(x.name) : env.lookup(x.name);
          if (!v) throw RuntimeError("ill-formed value", "unbound variable " + x.name, e.span);
          return *v;
        } else if constexpr (std::is_same_v<T, Expr::Const>) {
          return literal_value(x.value);
        } else if constexpr (std::is_same_v<T, Expr::Builtin>) {
          return builtin_value(x.name);
        } else if constexpr (std::is_same_v<T, Expr::Tuple>) {
          std::vector<Value> elems;
          elems.reserve(x.elems.size());
          for (const auto& el : x.elems) elems.push_back(eval_expr(env, *el));
          return make_tuple(std::move(elems));
        } else if constexpr (std::is_same_v<T, Expr::Variant>) {
          if (!x.arg) return make_variant(x.ctor);
          return make_variant(x.ctor, eval_expr(env, *x.arg));
        } else if constexpr (std::is_same_v<T, Expr::Cons>) {
          Value head = eval_expr(env, *x.head);
          return cons(std::move(head), eval_expr(env, *x.tail));
        } else if constexpr (std::is_same_v<T, Expr::List>) {
          std::vector<Value> elems;
          elems.reserve(x.elems.size());
          for (const auto& el : x.elems) elems.push_back(eval_expr(env, *el));
          return make_list(elems);
        } else if constexpr (std::is_same_v<T, Expr::Lambda>) {
          return Value(std::make_shared<const Closure>(Closure{x.param.get(), x.body.get(), env, nullptr}));
        } else if constexpr (std::is_same_v<T, Expr::Project>) {
          Value inst = eval_expr(env, *x.instance);
          if (!inst.is<InstancePtr>()) {
            throw RuntimeError("ill-formed value",
                               std::string("#") + x.op + " applied to a " + inst.tag(), e.span);
          }
          return perform_fn(*inst.get<InstancePtr>(), x.op);
        } else if constexpr (std::is_same_v<T, Expr::Handler>) {
          return handler_value(env, x);
        } else {
          return eval_expr(env, *x.expr);
        }
      },
      e.node);
}

Value Runtime::handler_value(const Env& env, const Expr::Handler& h) {
  auto hv = std::make_shared<HandlerValue>();
  for (const auto& clause : h.ops) {
    Value inst = eval_expr(env, *clause.instance);
    if (!inst.is<InstancePtr>()) {
      throw RuntimeError("ill-formed value",
                         std::string("handler clause for #") + clause.op + " on a " + inst.tag(),
                         clause.span);
    }
    hv->ops.push_back({(*inst.get<InstancePtr>())->id, clause.op, &clause});
  }
  hv->val = &h.val;
  hv->finally = &h.finally;
  hv->val_is_identity = is_identity(h.val);
  hv->finally_is_identity = is_identity(h.finally);
  hv->env = env;
  return Value(HandlerPtr(std::move(hv)));
}

Value Runtime::perform_fn(InstancePtr instance, std::string_view op) {
  return Value(std::make_shared<const BuiltinValue>(BuiltinValue{nullptr, {}, std::move(instance), op}));
}

Result Runtime::eval_comp(Env env, const Comp* c) {
  for (;;) {
    stack_check();
    const auto& node = c->node;
    if (const auto* x = std::get_if<Comp::Val>(&node)) {
      return Result(eval_expr(env, *x->expr));
    }
    if (const auto* x = std::get_if<Comp::Let>(&node)) {
      Result r = eval_comp(env, x->bound.get());
      if (!r.is_value()) {
        return lift(std::make_shared<LetFrame>(x->pattern.get(), x->body.get(), std::move(env)), std::move(r));
      }
      if (!match(*x->pattern, r.value(), env)) match_failure(x->pattern->span);
      c = x->body.get();
      continue;
    }
    if (const auto* x = std::get_if<Comp::LetSim>(&node)) {
      if (auto op = let_sim_bindings(*this, *x, env, {})) return std::move(*op);
      c = x->body.get();
      continue;
    }
    if (const auto* x = std::get_if<Comp::LetRec>(&node)) {
      env = bind_rec_group(x->bindings, env);
      c = x->body.get();
      continue;
    }
    if (const auto* x = std::get_if<Comp::If>(&node)) {
      Value cond = eval_expr(env, *x->cond);
      c = cond.as_bool() ? x->then_branch.get() : x->else_branch.get();
      continue;
    }
    if (const auto* x = std::get_if<Comp::Match>(&node)) {
      Value v = eval_expr(env, *x->scrutinee);
      if (x->cases.empty()) {
        throw RuntimeError("ill-formed value", "reached an absurd match", c->span);
      }
      const Comp* next = nullptr;
      for (const auto& mc : x->cases) {
        Env e = env;
        if (match(*mc.pattern, v, e)) {
          env = std::move(e);
          next = mc.body.get();
          break;
        }
      }
      if (!next) match_failure(c->span);
      c = next;
      continue;
    }
    if (const auto* x = std::get_if<Comp::App>(&node)) {
      Value fn = eval_expr(env, *x->fn);
      Value arg = eval_expr(env, *x->arg);
      if (const auto* cl = fn.get<ClosurePtr>()) {
        // Tail call: keep the closure alive through the new environment.
        Env e = closure_env(**cl);
        if (!match(*(*cl)->param, arg, e)) match_failure((*cl)->param->span);
        c = (*cl)->body;
        env = std::move(e);
        continue;
      }
      if (!fn.is<BuiltinPtr>()) return apply(fn, arg);
      try {
        return apply(fn, arg);
      } catch (RuntimeError& err) {  // locate errors raised by primitives
        if (!err.located()) throw RuntimeError(err.kind(), err.detail(), c->span);
        throw;
      }
    }
    if (const auto* x = std::get_if<Comp::New>(&node)) {
      if (!x->resource) return Result(new_instance(x->effect, nullptr, Value{}));
      auto res = std::make_shared<Resource>();
      for (const auto& rc : x->resource->clauses) {
        const core::ResourceClause* clause = &rc;
        res->clauses.emplace_back(rc.op, [clause, env](Runtime& rt, const Value& arg, const Value& state) {
          Env e = env;
          if (!rt.match(*clause->arg, arg, e) || !rt.match(*clause->state, state, e)) {
            match_failure(clause->span);
          }
          return rt.eval_comp(std::move(e), clause->body.get());
        });
      }
      Value initial = eval_expr(env, *x->resource->initial);
      return Result(new_instance(x->effect, std::move(res), std::move(initial)));
    }
    const auto& x = std::get<Comp::Handle>(node);
    Value h = eval_expr(env, *x.handler);
    if (!h.is<HandlerPtr>()) {
      throw RuntimeError("ill-formed value", std::string("expected a handler but got a ") + h.tag(), c->span);
    }
    return handle(*h.get<HandlerPtr>(), eval_comp(env, x.body.get()));
  }
}

Result Runtime::apply(const Value& fn, const Value& arg) {
  stack_check();
  if (const auto* cl = fn.get<ClosurePtr>()) {
    Env e = closure_env(**cl);
    if (!match(*(*cl)->param, arg, e)) match_failure((*cl)->param->span);
    return eval_comp(std::move(e), (*cl)->body);
  }
  if (const auto* b = fn.get<BuiltinPtr>()) {
    const BuiltinValue& bv = **b;
    if (!bv.def) return Result::operation(bv.instance, bv.op, arg, identity_cont());
    std::vector<Value> args = bv.args;
    args.push_back(arg);
    if (args.size() == bv.def->arity) return bv.def->fn(*this, args);
    return Result(Value(std::make_shared<const BuiltinValue>(BuiltinValue{bv.def, std::move(args), nullptr, {}})));
  }
  if (const auto* k = fn.get<Cont>()) {
    return (*k)->resume(*this, arg);
  }
  ill_formed(std::string("cannot apply a ") + fn.tag());
}

Result Runtime::lift(const FramePtr& f, Result r) {
  if (r.is_value()) return f->apply(*this, r.value());
  const Operation& op = r.op();
  return Result::operation(op.instance, op.op, op.arg, std::make_shared<const BindCont>(op.k, f));
}

Result Runtime::apply_handler(const HandlerPtr& h, Result r) {
  if (r.is_value()) {
    if (h->val_is_identity) return r;
    Env e = h->env;
    if (!match(*h->val->pattern, r.value(), e)) match_failure(h->val->pattern->span);
    return eval_comp(std::move(e), h->val->body.get());
  }
  const Operation& op = r.op();
  Cont k = std::make_shared<const HandleCont>(op.k, h);
  const HandlerValue::Entry* entry = h->find(op.instance->id, op.op);
  if (!entry) return Result::operation(op.instance, op.op, op.arg, std::move(k));
  Env e = h->env;
  if (!match(*entry->clause->arg, op.arg, e) || !match(*entry->clause->cont, Value(std::move(k)), e)) {
    match_failure(entry->clause->span);
  }
  return eval_comp(std::move(e), entry->clause->body.get());
}

Result Runtime::handle(const HandlerPtr& h, Result r) {
  Result handled = apply_handler(h, std::move(r));
  if (h->finally_is_identity) return handled;
  return lift(std::make_shared<ClauseFrame>(h->finally, h->env), std::move(handled));
}

}  // namespace eff::runtime
