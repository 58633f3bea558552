#include "typecheck/types.hpp"

namespace eff::types {

TypePtr var(int id) { return std::make_shared<const Type>(Type{Type::Var{id}}); }

TypePtr con(std::string name, std::vector<TypePtr> args) {
  return std::make_shared<const Type>(Type{Type::Con{std::move(name), std::move(args)}});
}

TypePtr arrow(TypePtr from, TypePtr to) {
  return std::make_shared<const Type>(Type{Type::Arrow{std::move(from), std::move(to)}});
}

TypePtr product(std::vector<TypePtr> elems) {
  return std::make_shared<const Type>(Type{Type::Product{std::move(elems)}});
}

TypePtr handler(TypePtr from, TypePtr to) {
  return std::make_shared<const Type>(Type{Type::Handler{std::move(from), std::move(to)}});
}

TypePtr int_type() {
  static const TypePtr t = con("int");
  return t;
}
TypePtr bool_type() {
  static const TypePtr t = con("bool");
  return t;
}
TypePtr unit_type() {
  static const TypePtr t = con("unit");
  return t;
}
TypePtr string_type() {
  static const TypePtr t = con("string");
  return t;
}
TypePtr float_type() {
  static const TypePtr t = con("float");
  return t;
}
TypePtr empty_type() {
  static const TypePtr t = con("empty");
  return t;
}
TypePtr list_type(TypePtr elem) { return con("list", {std::move(elem)}); }

std::string VarNamer::name(int id) {
  auto it = names_.find(id);
  if (it != names_.end()) return it->second;
  const std::size_t n = names_.size();
  std::string s = "'";
  s += static_cast<char>('a' + n % 26);
  if (n >= 26) s += std::to_string(n / 26);
  names_.emplace(id, s);
  return s;
}

namespace {

// Precedence levels, loosest first.
enum Level { kHandler, kArrow, kSum, kProduct, kApp };

std::string show(const TypePtr& t, VarNamer& namer, int level) {
  auto wrap = [level](int own, std::string s) { return own < level ? "(" + s + ")" : s; };
  if (const auto* v = std::get_if<Type::Var>(&t->node)) return namer.name(v->id);
  if (const auto* a = std::get_if<Type::Arrow>(&t->node)) {
    // Named left to right: operands of + are evaluated in unspecified order.
    std::string from = show(a->from, namer, kSum);
    return wrap(kArrow, from + " -> " + show(a->to, namer, kArrow));
  }
  if (const auto* h = std::get_if<Type::Handler>(&t->node)) {
    std::string from = show(h->from, namer, kArrow);
    return wrap(kHandler, from + " => " + show(h->to, namer, kArrow));
  }
  if (const auto* p = std::get_if<Type::Product>(&t->node)) {
    std::string s;
    for (std::size_t i = 0; i < p->elems.size(); ++i) {
      if (i > 0) s += " * ";
      s += show(p->elems[i], namer, kApp);
    }
    return wrap(kProduct, s);
  }
  const auto& c = std::get<Type::Con>(t->node);
  if (c.name == "+" && c.args.size() == 2) {
    std::string left = show(c.args[0], namer, kSum);
    return wrap(kSum, left + " + " + show(c.args[1], namer, kProduct));
  }
  if (c.args.empty()) return c.name;
  if (c.args.size() == 1) return show(c.args[0], namer, kApp) + " " + c.name;
  std::string s = "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i > 0) s += ", ";
    s += show(c.args[i], namer, kHandler);
  }
  return s + ") " + c.name;
}

}  // namespace

std::string to_string(const TypePtr& t, VarNamer& namer) { return show(t, namer, kHandler); }

std::string to_string(const TypePtr& t) {
  VarNamer namer;
  return to_string(t, namer);
}

const char* to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::Mismatch: return "mismatch";
    case TypeErrorKind::OccursCheck: return "occurs-check";
    case TypeErrorKind::UnknownOperation: return "unknown-operation";
    case TypeErrorKind::UnknownVariable: return "unknown-variable";
    case TypeErrorKind::UnknownConstructor: return "unknown-constructor";
    case TypeErrorKind::UnknownType: return "unknown-type";
    case TypeErrorKind::Arity: return "arity";
    case TypeErrorKind::DuplicateClause: return "duplicate-clause";
    case TypeErrorKind::DuplicateVariable: return "duplicate-variable";
  }
  return "?";
}

}  // namespace eff::types
