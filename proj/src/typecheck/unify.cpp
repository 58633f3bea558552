#include "typecheck/unify.hpp"

namespace eff::types {

TypePtr Substitution::resolve(TypePtr t) const {
  while (const auto* v = std::get_if<Type::Var>(&t->node)) {
    auto it = map_.find(v->id);
    if (it == map_.end()) break;
    t = it->second;
  }
  return t;
}

TypePtr Substitution::zonk(const TypePtr& t0) const {
  TypePtr t = resolve(t0);
  if (std::holds_alternative<Type::Var>(t->node)) return t;
  if (const auto* c = std::get_if<Type::Con>(&t->node)) {
    if (c->args.empty()) return t;
    std::vector<TypePtr> args;
    for (const auto& a : c->args) args.push_back(zonk(a));
    return con(c->name, std::move(args));
  }
  if (const auto* a = std::get_if<Type::Arrow>(&t->node)) return arrow(zonk(a->from), zonk(a->to));
  if (const auto* h = std::get_if<Type::Handler>(&t->node)) return handler(zonk(h->from), zonk(h->to));
  const auto& p = std::get<Type::Product>(t->node);
  std::vector<TypePtr> elems;
  for (const auto& e : p.elems) elems.push_back(zonk(e));
  return product(std::move(elems));
}

bool Substitution::occurs(int id, const TypePtr& t0) const {
  TypePtr t = resolve(t0);
  if (const auto* v = std::get_if<Type::Var>(&t->node)) return v->id == id;
  if (const auto* c = std::get_if<Type::Con>(&t->node)) {
    for (const auto& a : c->args) {
      if (occurs(id, a)) return true;
    }
    return false;
  }
  if (const auto* a = std::get_if<Type::Arrow>(&t->node)) return occurs(id, a->from) || occurs(id, a->to);
  if (const auto* h = std::get_if<Type::Handler>(&t->node)) return occurs(id, h->from) || occurs(id, h->to);
  for (const auto& e : std::get<Type::Product>(t->node).elems) {
    if (occurs(id, e)) return true;
  }
  return false;
}

void Substitution::free_vars(const TypePtr& t0, std::set<int>& out) const {
  TypePtr t = resolve(t0);
  if (const auto* v = std::get_if<Type::Var>(&t->node)) {
    out.insert(v->id);
  } else if (const auto* c = std::get_if<Type::Con>(&t->node)) {
    for (const auto& a : c->args) free_vars(a, out);
  } else if (const auto* a = std::get_if<Type::Arrow>(&t->node)) {
    free_vars(a->from, out);
    free_vars(a->to, out);
  } else if (const auto* h = std::get_if<Type::Handler>(&t->node)) {
    free_vars(h->from, out);
    free_vars(h->to, out);
  } else {
    for (const auto& e : std::get<Type::Product>(t->node).elems) free_vars(e, out);
  }
}

namespace {

[[noreturn]] void mismatch(const Substitution& s, const TypePtr& a, const TypePtr& b, Span span) {
  VarNamer namer;
  const std::string sa = to_string(s.zonk(a), namer);
  const std::string sb = to_string(s.zonk(b), namer);
  throw TypeError(TypeErrorKind::Mismatch, "cannot unify " + sa + " with " + sb, span);
}

}  // namespace

void unify(Substitution& s, const TypePtr& a0, const TypePtr& b0, Span span) {
  const TypePtr a = s.resolve(a0);
  const TypePtr b = s.resolve(b0);
  if (a == b) return;
  const auto* va = std::get_if<Type::Var>(&a->node);
  const auto* vb = std::get_if<Type::Var>(&b->node);
  if (va && vb && va->id == vb->id) return;
  if (va || vb) {
    const int id = va ? va->id : vb->id;
    const TypePtr& other = va ? b : a;
    if (s.occurs(id, other)) {
      VarNamer namer;
      const std::string sv = to_string(var(id), namer);
      const std::string so = to_string(s.zonk(other), namer);
      throw TypeError(TypeErrorKind::OccursCheck, "cannot unify " + sv + " with " + so, span);
    }
    s.bind(id, other);
    return;
  }
  if (a->node.index() != b->node.index()) mismatch(s, a, b, span);
  if (const auto* ca = std::get_if<Type::Con>(&a->node)) {
    const auto& cb = std::get<Type::Con>(b->node);
    if (ca->name != cb.name || ca->args.size() != cb.args.size()) mismatch(s, a, b, span);
    for (std::size_t i = 0; i < ca->args.size(); ++i) unify(s, ca->args[i], cb.args[i], span);
  } else if (const auto* fa = std::get_if<Type::Arrow>(&a->node)) {
    const auto& fb = std::get<Type::Arrow>(b->node);
    unify(s, fa->from, fb.from, span);
    unify(s, fa->to, fb.to, span);
  } else if (const auto* ha = std::get_if<Type::Handler>(&a->node)) {
    const auto& hb = std::get<Type::Handler>(b->node);
    unify(s, ha->from, hb.from, span);
    unify(s, ha->to, hb.to, span);
  } else {
    const auto& pa = std::get<Type::Product>(a->node);
    const auto& pb = std::get<Type::Product>(b->node);
    if (pa.elems.size() != pb.elems.size()) mismatch(s, a, b, span);
    for (std::size_t i = 0; i < pa.elems.size(); ++i) unify(s, pa.elems[i], pb.elems[i], span);
  }
}

}  // namespace eff::types
