#include "typecheck/infer.hpp"

#include <algorithm>

#include "desugar/core_printer.hpp"
#include "syntax/parser.hpp"

namespace eff::typecheck {

using namespace types;
using core::Comp;
using core::Expr;
using syntax::Pattern;

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

TypePtr literal_type(const syntax::Literal& lit) {
  return std::visit(overloaded{
                        [](std::int64_t) { return int_type(); },
                        [](bool) { return bool_type(); },
                        [](syntax::Unit) { return unit_type(); },
                        [](const std::string&) { return string_type(); },
                        [](double) { return float_type(); },
                    },
                    lit);
}

}  // namespace

const std::vector<BuiltinSignature>& builtin_signatures() {
  static const std::vector<BuiltinSignature> sigs = {
      {"+", "int -> int -> int"},
      {"-", "int -> int -> int"},
      {"*", "int -> int -> int"},
      {"/", "int -> int -> int"},
      {"mod", "int -> int -> int"},
      {"~-", "int -> int"},
      {"+.", "float -> float -> float"},
      {"-.", "float -> float -> float"},
      {"*.", "float -> float -> float"},
      {"/.", "float -> float -> float"},
      {"~-.", "float -> float"},
      {"=", "'a -> 'a -> bool"},
      {"<>", "'a -> 'a -> bool"},
      {"<", "'a -> 'a -> bool"},
      {">", "'a -> 'a -> bool"},
      {"<=", "'a -> 'a -> bool"},
      {">=", "'a -> 'a -> bool"},
      {"&&", "bool -> bool -> bool"},
      {"||", "bool -> bool -> bool"},
      {"@", "'a list -> 'a list -> 'a list"},
      {"string_of_int", "int -> string"},
      {"string_of_float", "float -> string"},
      {"float_of_int", "int -> float"},
      {"int_of_float", "float -> int"},
      {"string_length", "string -> int"},
      {"string_concat", "string -> string -> string"},
  };
  return sigs;
}

const syntax::EffectOp* Checker::EffectSig::find(const std::string& op) const {
  for (const auto& o : ops) {
    if (o.name == op) return &o;
  }
  return nullptr;
}

Checker::Checker() {
  for (const char* base : {"int", "bool", "unit", "string", "float", "empty"}) type_arity_[base] = 0;
  type_arity_["list"] = 1;
  type_arity_["+"] = 2;

  // 'a + 'b with constructors Left and Right.
  auto tv = [](const char* n) { return syntax::make_type(syntax::TypeExpr::Var{n}); };
  variants_["+"] = VariantSig{{"'a", "'b"}, {{"Left", tv("'a")}, {"Right", tv("'b")}}};
  ctor_owner_["Left"] = "+";
  ctor_owner_["Right"] = "+";

  declare(std::get<syntax::TypeDecl>(syntax::parse_program(
      "type channel = effect operation read : unit -> string operation write : string -> unit end")[0]));
  globals_["std"] = Scheme{{}, con("channel")};

  for (const auto& sig : builtin_signatures()) {
    TypeVars vars;
    TypePtr t = convert(*syntax::parse_type(sig.type), vars, true);
    Scheme s;
    for (const auto& [_, v] : vars) s.vars.push_back(std::get<Type::Var>(v->node).id);
    s.body = t;
    // Builtins are reachable both as (shadowable) globals and as
    // primitives that desugared loops use.
    globals_[sig.name] = s;
  }
}

// ---------------------------------------------------------------------------
// Context

std::optional<Scheme> Checker::lookup(const Locals& ctx, const std::string& name) const {
  for (const Local* l = ctx.get(); l != nullptr; l = l->next.get()) {
    if (l->name == name) return l->scheme;
  }
  return global(name);
}

std::optional<Scheme> Checker::global(const std::string& name) const {
  auto it = globals_.find(name);
  if (it == globals_.end()) return std::nullopt;
  return it->second;
}

std::string Checker::global_type(const std::string& name) const {
  auto s = global(name);
  return s ? to_string(subst_.zonk(s->body)) : "";
}

Scheme Checker::generalize(const Locals& ctx, const TypePtr& t0) const {
  const TypePtr t = subst_.zonk(t0);
  std::set<int> fv;
  subst_.free_vars(t, fv);
  if (fv.empty()) return Scheme{{}, t};
  std::set<int> env;
  auto add_scheme = [&](const Scheme& s) {
    std::set<int> sv;
    subst_.free_vars(s.body, sv);
    for (int q : s.vars) sv.erase(q);
    env.insert(sv.begin(), sv.end());
  };
  for (const Local* l = ctx.get(); l != nullptr; l = l->next.get()) add_scheme(l->scheme);
  for (const auto& name : weak_globals_) add_scheme(globals_.at(name));
  Scheme s;
  for (int v : fv) {
    if (!env.count(v)) s.vars.push_back(v);
  }
  s.body = t;
  return s;
}

TypePtr Checker::instantiate(const Scheme& s) {
  if (s.vars.empty()) return s.body;
  std::unordered_map<int, TypePtr> fresh_vars;
  for (int v : s.vars) fresh_vars[v] = fresh();
  std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& t0) -> TypePtr {
    const TypePtr t = subst_.resolve(t0);
    if (const auto* v = std::get_if<Type::Var>(&t->node)) {
      auto it = fresh_vars.find(v->id);
      return it == fresh_vars.end() ? t : it->second;
    }
    if (const auto* c = std::get_if<Type::Con>(&t->node)) {
      if (c->args.empty()) return t;
      std::vector<TypePtr> args;
      for (const auto& a : c->args) args.push_back(go(a));
      return con(c->name, std::move(args));
    }
    if (const auto* a = std::get_if<Type::Arrow>(&t->node)) return arrow(go(a->from), go(a->to));
    if (const auto* h = std::get_if<Type::Handler>(&t->node)) return handler(go(h->from), go(h->to));
    std::vector<TypePtr> elems;
    for (const auto& e : std::get<Type::Product>(t->node).elems) elems.push_back(go(e));
    return product(std::move(elems));
  };
  return go(s.body);
}

Checker::Locals Checker::extend(Locals ctx, const std::vector<std::pair<std::string, TypePtr>>& binds,
                                bool gen) {
  const Locals outer = ctx;
  for (const auto& [name, t] : binds) {
    Scheme s = gen ? generalize(outer, t) : Scheme{{}, t};
    ctx = std::make_shared<const Local>(Local{name, std::move(s), ctx});
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Type expressions and declarations

TypePtr Checker::convert(const syntax::TypeExpr& t, TypeVars& vars, bool allow_new) {
  return std::visit(
      overloaded{
          [&](const syntax::TypeExpr::Var& v) -> TypePtr {
            auto it = vars.find(v.name);
            if (it != vars.end()) return it->second;
            if (!allow_new) {
              throw TypeError(TypeErrorKind::UnknownType, "unbound type variable " + v.name, t.span);
            }
            TypePtr f = fresh();
            vars.emplace(v.name, f);
            return f;
          },
          [&](const syntax::TypeExpr::Named& n) -> TypePtr {
            auto it = type_arity_.find(n.name);
            if (it == type_arity_.end() || n.name == "+") {
              throw TypeError(TypeErrorKind::UnknownType, "unknown type " + n.name, t.span);
            }
            if (it->second != n.args.size()) {
              throw TypeError(TypeErrorKind::Arity,
                              "type " + n.name + " expects " + std::to_string(it->second) +
                                  " argument(s) but is given " + std::to_string(n.args.size()),
                              t.span);
            }
            std::vector<TypePtr> args;
            for (const auto& a : n.args) args.push_back(convert(*a, vars, allow_new));
            return con(n.name, std::move(args));
          },
          [&](const syntax::TypeExpr::Arrow& a) -> TypePtr {
            TypePtr from = convert(*a.from, vars, allow_new);
            return arrow(from, convert(*a.to, vars, allow_new));
          },
          [&](const syntax::TypeExpr::Product& p) -> TypePtr {
            std::vector<TypePtr> elems;
            for (const auto& e : p.elems) elems.push_back(convert(*e, vars, allow_new));
            return product(std::move(elems));
          },
          [&](const syntax::TypeExpr::Sum& s) -> TypePtr {
            TypePtr l = convert(*s.left, vars, allow_new);
            return con("+", {l, convert(*s.right, vars, allow_new)});
          },
          [&](const syntax::TypeExpr::Handler& h) -> TypePtr {
            TypePtr from = convert(*h.from, vars, allow_new);
            return handler(from, convert(*h.to, vars, allow_new));
          },
      },
      t.node);
}

void Checker::declare(const syntax::TypeDecl& d) {
  // Validate against a copy so that a bad declaration changes nothing.
  const auto saved_arity = type_arity_;
  try {
    type_arity_[d.name] = d.params.size();
    TypeVars vars;
    for (const auto& p : d.params) {
      if (vars.count(p)) {
        throw TypeError(TypeErrorKind::DuplicateVariable, "type parameter " + p + " is repeated", d.span);
      }
      vars.emplace(p, fresh());
    }
    std::set<std::string> seen;
    if (const auto* e = std::get_if<syntax::EffectDecl>(&d.body)) {
      for (const auto& op : e->ops) {
        if (!seen.insert(op.name).second) {
          throw TypeError(TypeErrorKind::DuplicateClause, "operation " + op.name + " is declared twice", d.span);
        }
        convert(*op.param, vars, false);
        convert(*op.result, vars, false);
      }
    } else {
      for (const auto& c : std::get<syntax::VariantDecl>(d.body).ctors) {
        if (!seen.insert(c.name).second) {
          throw TypeError(TypeErrorKind::DuplicateClause, "constructor " + c.name + " is declared twice", d.span);
        }
        if (c.arg) convert(*c.arg, vars, false);
      }
    }
  } catch (...) {
    type_arity_ = saved_arity;
    throw;
  }

  // Redeclaration replaces the previous meaning of the name.
  for (auto it = ctor_owner_.begin(); it != ctor_owner_.end();) {
    it = it->second == d.name ? ctor_owner_.erase(it) : std::next(it);
  }
  effects_.erase(d.name);
  variants_.erase(d.name);
  if (const auto* e = std::get_if<syntax::EffectDecl>(&d.body)) {
    effects_[d.name] = EffectSig{d.params, e->ops, ++next_stamp_};
  } else {
    const auto& v = std::get<syntax::VariantDecl>(d.body);
    variants_[d.name] = VariantSig{d.params, v.ctors};
    for (const auto& c : v.ctors) ctor_owner_[c.name] = d.name;
  }
}

// ---------------------------------------------------------------------------
// Judgements

TypePtr Checker::constructor_type(const std::string& ctor, TypePtr* arg, Span span) {
  auto owner = ctor_owner_.find(ctor);
  if (owner == ctor_owner_.end()) {
    throw TypeError(TypeErrorKind::UnknownConstructor, "unknown constructor " + ctor, span);
  }
  const VariantSig& sig = variants_.at(owner->second);
  TypeVars vars;
  std::vector<TypePtr> args;
  for (const auto& p : sig.params) {
    args.push_back(fresh());
    vars.emplace(p, args.back());
  }
  for (const auto& c : sig.ctors) {
    if (c.name == ctor) {
      *arg = c.arg ? convert(*c.arg, vars, false) : nullptr;
      break;
    }
  }
  return con(owner->second, std::move(args));
}

TypePtr Checker::infer_pattern(const Pattern& p, std::vector<std::pair<std::string, TypePtr>>& binds) {
  return std::visit(
      overloaded{
          [&](const Pattern::Var& v) -> TypePtr {
            for (const auto& [n, _] : binds) {
              if (n == v.name) {
                throw TypeError(TypeErrorKind::DuplicateVariable,
                                "variable " + v.name + " is bound several times in this pattern", p.span);
              }
            }
            TypePtr t = fresh();
            binds.emplace_back(v.name, t);
            return t;
          },
          [&](const Pattern::Wildcard&) { return fresh(); },
          [&](const Pattern::Const& c) { return literal_type(c.value); },
          [&](const Pattern::Tuple& t) {
            std::vector<TypePtr> elems;
            for (const auto& e : t.elems) elems.push_back(infer_pattern(*e, binds));
            return product(std::move(elems));
          },
          [&](const Pattern::Construct& c) {
            TypePtr arg;
            TypePtr result = constructor_type(c.ctor, &arg, p.span);
            if (c.arg && !arg) {
              throw TypeError(TypeErrorKind::Arity, "constructor " + c.ctor + " takes no argument", p.span);
            }
            if (!c.arg && arg) {
              throw TypeError(TypeErrorKind::Arity, "constructor " + c.ctor + " expects an argument", p.span);
            }
            if (c.arg) unify(infer_pattern(*c.arg, binds), arg, c.arg->span);
            return result;
          },
          [&](const Pattern::Cons& c) {
            TypePtr head = infer_pattern(*c.head, binds);
            TypePtr tail = infer_pattern(*c.tail, binds);
            unify(tail, list_type(head), p.span);
            return tail;
          },
          [&](const Pattern::List& l) {
            TypePtr elem = fresh();
            for (const auto& e : l.elems) unify(infer_pattern(*e, binds), elem, e->span);
            return list_type(elem);
          },
      },
      p.node);
}

TypePtr Checker::operation_type(const TypePtr& instance, const std::string& op, Span span,
                                TypePtr* param, TypePtr* result) {
  const TypePtr t = subst_.resolve(instance);
  const EffectSig* sig = nullptr;
  std::string effect;
  std::vector<TypePtr> args;
  if (std::holds_alternative<Type::Var>(t->node)) {
    // Unknown instance type: the most recently declared effect with `op`.
    for (const auto& [name, s] : effects_) {
      if (s.find(op) && (!sig || s.stamp > sig->stamp)) {
        sig = &s;
        effect = name;
      }
    }
    if (!sig) throw TypeError(TypeErrorKind::UnknownOperation, "unknown operation " + op, span);
    for (std::size_t i = 0; i < sig->params.size(); ++i) args.push_back(fresh());
    unify(t, con(effect, args), span);
  } else if (const auto* c = std::get_if<Type::Con>(&t->node); c && effects_.count(c->name)) {
    effect = c->name;
    sig = &effects_.at(effect);
    args = c->args;
    if (!sig->find(op)) {
      throw TypeError(TypeErrorKind::UnknownOperation, "effect " + effect + " has no operation " + op, span);
    }
  } else {
    throw TypeError(TypeErrorKind::UnknownOperation,
                    "operation " + op + " applied to a value of type " + to_string(subst_.zonk(t)) +
                        ", which is not an effect instance",
                    span);
  }
  TypeVars vars;
  for (std::size_t i = 0; i < sig->params.size(); ++i) vars.emplace(sig->params[i], args[i]);
  const syntax::EffectOp* decl = sig->find(op);
  TypePtr a = convert(*decl->param, vars, false);
  TypePtr b = convert(*decl->result, vars, false);
  if (param) *param = a;
  if (result) *result = b;
  return arrow(a, b);
}

TypePtr Checker::infer_handler(const Locals& ctx, const Expr::Handler& h) {
  const TypePtr a = fresh();
  const TypePtr b = fresh();
  const TypePtr c = fresh();
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& clause : h.ops) {
    if (!seen.emplace(core::dump_expr(*clause.instance), clause.op).second) {
      throw TypeError(TypeErrorKind::DuplicateClause,
                      "duplicate handler clause for operation " + clause.op, clause.span);
    }
    TypePtr inst = infer_expr(ctx, *clause.instance);
    TypePtr ai, bi;
    operation_type(inst, clause.op, clause.span, &ai, &bi);
    std::vector<std::pair<std::string, TypePtr>> binds;
    unify(infer_pattern(*clause.arg, binds), ai, clause.arg->span);
    unify(infer_pattern(*clause.cont, binds), arrow(bi, b), clause.cont->span);
    unify(infer_comp(extend(ctx, binds, false), *clause.body), b, clause.body->span);
  }
  {
    std::vector<std::pair<std::string, TypePtr>> binds;
    unify(infer_pattern(*h.val.pattern, binds), a, h.val.pattern->span);
    unify(infer_comp(extend(ctx, binds, false), *h.val.body), b, h.val.body->span);
  }
  {
    std::vector<std::pair<std::string, TypePtr>> binds;
    unify(infer_pattern(*h.finally.pattern, binds), b, h.finally.pattern->span);
    unify(infer_comp(extend(ctx, binds, false), *h.finally.body), c, h.finally.body->span);
  }
  return handler(a, c);
}

TypePtr Checker::infer_expr(const Locals& ctx, const Expr& e) {
  return std::visit(
      overloaded{
          [&](const Expr::Var& x) -> TypePtr {
            auto s = x.scope == core::Scope::Global ? global(x.name) : lookup(ctx, x.name);
            if (!s) throw TypeError(TypeErrorKind::UnknownVariable, "unbound variable " + x.name, e.span);
            return instantiate(*s);
          },
          [&](const Expr::Const& x) { return literal_type(x.value); },
          [&](const Expr::Builtin& x) -> TypePtr {
            for (const auto& sig : builtin_signatures()) {
              if (x.name == sig.name) {
                TypeVars vars;
                return convert(*syntax::parse_type(sig.type), vars, true);
              }
            }
            throw TypeError(TypeErrorKind::UnknownVariable, "unknown primitive " + x.name, e.span);
          },
          [&](const Expr::Tuple& x) {
            std::vector<TypePtr> elems;
            for (const auto& el : x.elems) elems.push_back(infer_expr(ctx, *el));
            return product(std::move(elems));
          },
          [&](const Expr::Variant& x) {
            TypePtr arg;
            TypePtr result = constructor_type(x.ctor, &arg, e.span);
            if (x.arg && !arg) {
              throw TypeError(TypeErrorKind::Arity, "constructor " + x.ctor + " takes no argument", e.span);
            }
            if (!x.arg && arg) {
              throw TypeError(TypeErrorKind::Arity, "constructor " + x.ctor + " expects an argument", e.span);
            }
            if (x.arg) unify(arg, infer_expr(ctx, *x.arg), x.arg->span);
            return result;
          },
          [&](const Expr::Cons& x) {
            TypePtr head = infer_expr(ctx, *x.head);
            TypePtr tail = infer_expr(ctx, *x.tail);
            unify(list_type(head), tail, x.tail->span);
            return tail;
          },
          [&](const Expr::List& x) {
            TypePtr elem = fresh();
            for (const auto& el : x.elems) unify(elem, infer_expr(ctx, *el), el->span);
            return list_type(elem);
          },
          [&](const Expr::Lambda& x) {
            std::vector<std::pair<std::string, TypePtr>> binds;
            TypePtr param = infer_pattern(*x.param, binds);
            if (x.annotation) unify(convert_annotation(x.annotation), param, x.param->span);
            TypePtr body = infer_comp(extend(ctx, binds, false), *x.body);
            return arrow(param, body);
          },
          [&](const Expr::Project& x) {
            return operation_type(infer_expr(ctx, *x.instance), x.op, e.span);
          },
          [&](const Expr::Handler& x) { return infer_handler(ctx, x); },
          [&](const Expr::Annot& x) {
            TypePtr t = infer_expr(ctx, *x.expr);
            unify(convert_annotation(x.type), t, e.span);
            return t;
          },
      },
      e.node);
}

TypePtr Checker::infer_comp(const Locals& ctx, const Comp& c) {
  return std::visit(
      overloaded{
          [&](const Comp::Val& x) { return infer_expr(ctx, *x.expr); },
          [&](const Comp::Let& x) {
            TypePtr bound = infer_comp(ctx, *x.bound);
            std::vector<std::pair<std::string, TypePtr>> binds;
            unify(infer_pattern(*x.pattern, binds), bound, x.bound->span);
            const bool gen = std::holds_alternative<Comp::Val>(x.bound->node);
            return infer_comp(extend(ctx, binds, gen), *x.body);
          },
          [&](const Comp::LetSim& x) {
            std::vector<std::pair<std::string, TypePtr>> binds;
            std::vector<std::size_t> firsts;
            std::vector<bool> gens;
            for (const auto& [pat, bound] : x.bindings) {
              TypePtr t = infer_comp(ctx, *bound);
              const std::size_t first = binds.size();
              unify(infer_pattern(*pat, binds), t, bound->span);
              firsts.push_back(first);
              gens.push_back(std::holds_alternative<Comp::Val>(bound->node));
            }
            Locals inner = ctx;
            for (std::size_t i = 0; i < firsts.size(); ++i) {
              const std::size_t end = i + 1 < firsts.size() ? firsts[i + 1] : binds.size();
              std::vector<std::pair<std::string, TypePtr>> group(binds.begin() + firsts[i], binds.begin() + end);
              for (const auto& [name, t] : group) {
                Scheme s = gens[i] ? generalize(ctx, t) : Scheme{{}, t};
                inner = std::make_shared<const Local>(Local{name, std::move(s), inner});
              }
            }
            return infer_comp(inner, *x.body);
          },
          [&](const Comp::LetRec& x) {
            std::vector<std::pair<std::string, TypePtr>> binds;
            for (const auto& [name, fn] : x.bindings) binds.emplace_back(name, fresh());
            Locals rec = extend(ctx, binds, false);
            for (std::size_t i = 0; i < x.bindings.size(); ++i) {
              unify(binds[i].second, infer_expr(rec, *x.bindings[i].second), x.bindings[i].second->span);
            }
            return infer_comp(extend(ctx, binds, true), *x.body);
          },
          [&](const Comp::If& x) {
            unify(bool_type(), infer_expr(ctx, *x.cond), x.cond->span);
            TypePtr t = infer_comp(ctx, *x.then_branch);
            unify(t, infer_comp(ctx, *x.else_branch), x.else_branch->span);
            return t;
          },
          [&](const Comp::Match& x) {
            TypePtr scrutinee = infer_expr(ctx, *x.scrutinee);
            if (x.cases.empty()) {
              unify(empty_type(), scrutinee, x.scrutinee->span);
              return fresh();
            }
            TypePtr result = fresh();
            for (const auto& mc : x.cases) {
              std::vector<std::pair<std::string, TypePtr>> binds;
              unify(scrutinee, infer_pattern(*mc.pattern, binds), mc.pattern->span);
              unify(result, infer_comp(extend(ctx, binds, false), *mc.body), mc.body->span);
            }
            return result;
          },
          [&](const Comp::App& x) {
            TypePtr fn = infer_expr(ctx, *x.fn);
            TypePtr arg = infer_expr(ctx, *x.arg);
            TypePtr result = fresh();
            unify(fn, arrow(arg, result), c.span);
            return result;
          },
          [&](const Comp::New& x) -> TypePtr {
            auto it = effects_.find(x.effect);
            if (it == effects_.end()) {
              throw TypeError(TypeErrorKind::UnknownType, x.effect + " is not an effect type", c.span);
            }
            const EffectSig& sig = it->second;
            std::vector<TypePtr> args;
            TypeVars vars;
            for (const auto& p : sig.params) {
              args.push_back(fresh());
              vars.emplace(p, args.back());
            }
            TypePtr inst = con(x.effect, args);
            if (!x.resource) return inst;
            const TypePtr state = infer_expr(ctx, *x.resource->initial);
            std::set<std::string> seen;
            for (const auto& rc : x.resource->clauses) {
              const syntax::EffectOp* op = sig.find(rc.op);
              if (!op) {
                throw TypeError(TypeErrorKind::UnknownOperation,
                                "effect " + x.effect + " has no operation " + rc.op, rc.span);
              }
              if (!seen.insert(rc.op).second) {
                throw TypeError(TypeErrorKind::DuplicateClause, "duplicate resource clause for " + rc.op, rc.span);
              }
              TypePtr a = convert(*op->param, vars, false);
              TypePtr b = convert(*op->result, vars, false);
              std::vector<std::pair<std::string, TypePtr>> binds;
              unify(infer_pattern(*rc.arg, binds), a, rc.arg->span);
              unify(infer_pattern(*rc.state, binds), state, rc.state->span);
              unify(infer_comp(extend(ctx, binds, false), *rc.body), product({b, state}), rc.body->span);
            }
            return inst;
          },
          [&](const Comp::Handle& x) {
            TypePtr h = infer_expr(ctx, *x.handler);
            TypePtr body = infer_comp(ctx, *x.body);
            TypePtr result = fresh();
            unify(h, handler(body, result), c.span);
            return result;
          },
      },
      c.node);
}

// ---------------------------------------------------------------------------
// Items

void Checker::begin_item() {
  subst_ = Substitution{};
  annotation_vars_.clear();
}

void Checker::commit(std::vector<std::pair<std::string, Scheme>> bindings) {
  for (auto& [name, scheme] : bindings) globals_[name] = std::move(scheme);
  std::set<std::string> candidates = weak_globals_;
  for (const auto& [name, _] : bindings) candidates.insert(name);
  weak_globals_.clear();
  for (const auto& name : candidates) {
    Scheme& s = globals_.at(name);
    s.body = subst_.zonk(s.body);
    std::set<int> fv;
    subst_.free_vars(s.body, fv);
    for (int q : s.vars) fv.erase(q);
    if (!fv.empty()) weak_globals_.insert(name);
  }
}

TypePtr Checker::check_item(const core::Item& item) {
  begin_item();
  return std::visit(
      overloaded{
          [&](const syntax::TypeDecl& d) -> TypePtr {
            declare(d);
            return nullptr;
          },
          [&](const core::Define& d) -> TypePtr {
            std::vector<std::pair<std::string, TypePtr>> binds;
            std::vector<bool> gens;
            for (const auto& [pat, bound] : d.bindings) {
              TypePtr t = infer_comp(nullptr, *bound);
              const std::size_t before = binds.size();
              unify(infer_pattern(*pat, binds), t, bound->span);
              gens.resize(binds.size(), std::holds_alternative<Comp::Val>(bound->node));
              (void)before;
            }
            std::vector<std::pair<std::string, Scheme>> schemes;
            for (std::size_t i = 0; i < binds.size(); ++i) {
              schemes.emplace_back(binds[i].first,
                                   gens[i] ? generalize(nullptr, binds[i].second)
                                           : Scheme{{}, binds[i].second});
            }
            commit(std::move(schemes));
            return nullptr;
          },
          [&](const core::DefineRec& d) -> TypePtr {
            std::vector<std::pair<std::string, TypePtr>> binds;
            for (const auto& [name, fn] : d.bindings) binds.emplace_back(name, fresh());
            Locals rec = extend(nullptr, binds, false);
            for (std::size_t i = 0; i < d.bindings.size(); ++i) {
              unify(binds[i].second, infer_expr(rec, *d.bindings[i].second), d.bindings[i].second->span);
            }
            std::vector<std::pair<std::string, Scheme>> schemes;
            for (const auto& [name, t] : binds) schemes.emplace_back(name, generalize(nullptr, t));
            commit(std::move(schemes));
            return nullptr;
          },
          [&](const core::Run& r) -> TypePtr {
            TypePtr t = subst_.zonk(infer_comp(nullptr, *r.comp));
            commit({});
            return t;
          },
      },
      item);
}

TypePtr Checker::infer(const Comp& c) {
  begin_item();
  return subst_.zonk(infer_comp(nullptr, c));
}

TypePtr Checker::infer(const Expr& e) {
  begin_item();
  return subst_.zonk(infer_expr(nullptr, e));
}

}  // namespace eff::typecheck
