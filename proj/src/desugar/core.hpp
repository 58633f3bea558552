#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "syntax/ast.hpp"

// Core language: inert expressions and effectful computations, kept apart.
namespace eff::core {

using syntax::Literal;
using syntax::Pattern;
using syntax::PatternPtr;
using syntax::TypeExprPtr;

struct Expr;
struct Comp;
using ExprPtr = std::shared_ptr<const Expr>;
using CompPtr = std::shared_ptr<const Comp>;

struct OpClause {
  ExprPtr instance;
  std::string op;
  PatternPtr arg;
  PatternPtr cont;
  CompPtr body;
  Span span;
};

struct ValueClause {
  PatternPtr pattern;
  CompPtr body;
};

// Filled in by resolve_scopes; Unknown means "search locals, then globals".
enum class Scope : unsigned char { Unknown, Global, Local };

struct Expr {
  struct Var {
    std::string name;
    mutable Scope scope = Scope::Unknown;
  };
  struct Const { Literal value; };
  struct Builtin { std::string name; };
  struct Tuple { std::vector<ExprPtr> elems; };
  struct Variant { std::string ctor; ExprPtr arg; };  // arg may be null
  struct Cons { ExprPtr head, tail; };
  struct List { std::vector<ExprPtr> elems; };
  struct Lambda { PatternPtr param; TypeExprPtr annotation; CompPtr body; };
  struct Project { ExprPtr instance; std::string op; };
  // Missing val/finally clauses are filled with the identity.
  struct Handler { std::vector<OpClause> ops; ValueClause val; ValueClause finally; };
  struct Annot { ExprPtr expr; TypeExprPtr type; };

  using Node =
      std::variant<Var, Const, Builtin, Tuple, Variant, Cons, List, Lambda, Project, Handler, Annot>;
  Node node;
  Span span;
};

struct MatchCase {
  PatternPtr pattern;
  CompPtr body;
};

struct ResourceClause {
  std::string op;
  PatternPtr arg;
  PatternPtr state;
  CompPtr body;
  Span span;
};

struct Resource {
  ExprPtr initial;
  std::vector<ResourceClause> clauses;
};

struct Comp {
  struct Val { ExprPtr expr; };
  struct Let { PatternPtr pattern; CompPtr bound; CompPtr body; };
  struct LetSim {
    std::vector<std::pair<PatternPtr, CompPtr>> bindings;
    CompPtr body;
  };
  struct LetRec {
    std::vector<std::pair<std::string, ExprPtr>> bindings;  // each a Lambda
    CompPtr body;
  };
  struct If { ExprPtr cond; CompPtr then_branch, else_branch; };
  // No cases: absurd.
  struct Match { ExprPtr scrutinee; std::vector<MatchCase> cases; };
  struct App { ExprPtr fn, arg; };
  struct New { std::string effect; std::optional<Resource> resource; };
  struct Handle { ExprPtr handler; CompPtr body; };

  using Node = std::variant<Val, Let, LetSim, LetRec, If, Match, App, New, Handle>;
  Node node;
  Span span;
};

template <typename N>
ExprPtr make_expr(N node, Span span = {}) {
  return std::make_shared<const Expr>(Expr{std::move(node), span});
}

template <typename N>
CompPtr make_comp(N node, Span span = {}) {
  return std::make_shared<const Comp>(Comp{std::move(node), span});
}

// Top-level items after desugaring.
struct Define {
  std::vector<std::pair<PatternPtr, CompPtr>> bindings;  // >1: simultaneous
  Span span;
};

struct DefineRec {
  std::vector<std::pair<std::string, ExprPtr>> bindings;
  Span span;
};

struct Run {
  CompPtr comp;
  Span span;
};

using Item = std::variant<syntax::TypeDecl, Define, DefineRec, Run>;

// Marks each variable that no enclosing binder can capture as Global, so
// lookups may skip the local environment.
void resolve_scopes(const Item& item);
void resolve_scopes(const Comp& c);

}  // namespace eff::core
