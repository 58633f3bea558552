#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "common/source.hpp"

namespace eff::syntax {

// ---------------------------------------------------------------------------
// Type expressions

struct TypeExpr;
using TypeExprPtr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  struct Var { std::string name; };  // 'a
  // Named type applied to arguments: int, 'a list, ('a, 'b) selection, ...
  struct Named { std::string name; std::vector<TypeExprPtr> args; };
  struct Arrow { TypeExprPtr from, to; };
  struct Product { std::vector<TypeExprPtr> elems; };
  struct Sum { TypeExprPtr left, right; };
  struct Handler { TypeExprPtr from, to; };  // A => B

  using Node = std::variant<Var, Named, Arrow, Product, Sum, Handler>;
  Node node;
  Span span;
};

// ---------------------------------------------------------------------------
// Patterns (shared by the surface and core languages)

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Unit {
  bool operator==(const Unit&) const = default;
};

using Literal = std::variant<std::int64_t, bool, Unit, std::string, double>;

struct Pattern {
  struct Var { std::string name; };
  struct Wildcard {};
  struct Const { Literal value; };
  struct Tuple { std::vector<PatternPtr> elems; };
  struct Construct { std::string ctor; PatternPtr arg; };  // arg may be null
  struct Cons { PatternPtr head, tail; };
  struct List { std::vector<PatternPtr> elems; };

  using Node = std::variant<Var, Wildcard, Const, Tuple, Construct, Cons, List>;
  Node node;
  Span span;
};

// ---------------------------------------------------------------------------
// Surface terms: expressions and computations freely mixed.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Param {
  PatternPtr pattern;
  TypeExprPtr annotation;  // may be null
};

struct OpClause {
  TermPtr instance;
  std::string op;
  PatternPtr arg;
  PatternPtr cont;
  TermPtr body;
  Span span;
};

struct ValueClause {
  PatternPtr pattern;
  TermPtr body;
};

struct HandlerClauses {
  std::vector<OpClause> ops;
  std::optional<ValueClause> val;
  std::optional<ValueClause> finally;
};

struct ResourceClause {
  std::string op;
  PatternPtr arg;
  PatternPtr state;
  TermPtr body;
  Span span;
};

struct Resource {
  TermPtr initial;
  std::vector<ResourceClause> clauses;
};

struct Binding {
  PatternPtr pattern;
  TermPtr value;
};

struct RecBinding {
  std::string name;
  TermPtr value;
};

struct MatchCase {
  PatternPtr pattern;
  TermPtr body;
};

enum class Logic { And, Or };

struct Term {
  struct Var { std::string name; };
  struct Lit { Literal value; };
  struct Tuple { std::vector<TermPtr> elems; };
  struct Construct { std::string ctor; TermPtr arg; };  // arg may be null
  struct Cons { TermPtr head, tail; };
  struct List { std::vector<TermPtr> elems; };
  struct Fun { std::vector<Param> params; TermPtr body; };
  struct Function { std::vector<MatchCase> cases; };
  struct Project { TermPtr instance; std::string op; };
  struct HandlerLit { HandlerClauses clauses; };
  struct App { TermPtr fn, arg; };
  struct LogicOp { Logic op; TermPtr lhs, rhs; };
  // One binding is an ordinary let; several form a simultaneous let.
  struct Let { std::vector<Binding> bindings; TermPtr body; };
  struct LetRec { std::vector<RecBinding> bindings; TermPtr body; };
  struct If { TermPtr cond, then_branch, else_branch; };  // else may be null
  // No cases: eliminator of the empty type.
  struct Match { TermPtr scrutinee; std::vector<MatchCase> cases; };
  struct New { std::string effect; std::optional<Resource> resource; };
  struct WithHandle { TermPtr handler, body; };
  struct HandleInline { TermPtr body; HandlerClauses clauses; };
  struct Seq { TermPtr first, second; };
  struct For { std::string var; TermPtr from, to, body; };
  struct While { TermPtr cond, body; };
  struct ValOf { TermPtr expr; };  // explicit `val e`
  struct Annot { TermPtr term; TypeExprPtr type; };
  // Never produced by the parser: a primitive that user bindings cannot
  // shadow. Appears when core terms are embedded back into surface syntax.
  struct Prim { std::string name; };

  using Node = std::variant<Var, Lit, Tuple, Construct, Cons, List, Fun, Function, Project,
                            HandlerLit, App, LogicOp, Let, LetRec, If, Match, New,
                            WithHandle, HandleInline, Seq, For, While, ValOf, Annot, Prim>;
  Node node;
  Span span;
};

template <typename N>
TermPtr make_term(N node, Span span = {}) {
  return std::make_shared<const Term>(Term{std::move(node), span});
}

template <typename N>
PatternPtr make_pattern(N node, Span span = {}) {
  return std::make_shared<const Pattern>(Pattern{std::move(node), span});
}

template <typename N>
TypeExprPtr make_type(N node, Span span = {}) {
  return std::make_shared<const TypeExpr>(TypeExpr{std::move(node), span});
}

// ---------------------------------------------------------------------------
// Top-level items

struct EffectOp {
  std::string name;
  TypeExprPtr param;
  TypeExprPtr result;
};

struct EffectDecl {
  std::vector<EffectOp> ops;
};

struct CtorDecl {
  std::string name;
  TypeExprPtr arg;  // may be null
};

struct VariantDecl {
  std::vector<CtorDecl> ctors;
};

struct TypeDecl {
  std::string name;
  std::vector<std::string> params;  // 'a 'b ...
  std::variant<EffectDecl, VariantDecl> body;
  Span span;
};

struct LetDef {
  std::vector<Binding> bindings;
  Span span;
};

struct LetRecDef {
  std::vector<RecBinding> bindings;
  Span span;
};

struct TopTerm {
  TermPtr term;
};

using Item = std::variant<TypeDecl, LetDef, LetRecDef, TopTerm>;

Span span_of(const Item& item);

}  // namespace eff::syntax
