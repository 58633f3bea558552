#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "common/source.hpp"

namespace eff::types {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  struct Var { int id; };
  // Nominal types: base types, `list`, the sum `+`, declared effects and
  // variants.
  struct Con { std::string name; std::vector<TypePtr> args; };
  struct Arrow { TypePtr from, to; };
  struct Product { std::vector<TypePtr> elems; };
  struct Handler { TypePtr from, to; };

  using Node = std::variant<Var, Con, Arrow, Product, Handler>;
  Node node;
};

TypePtr var(int id);
TypePtr con(std::string name, std::vector<TypePtr> args = {});
TypePtr arrow(TypePtr from, TypePtr to);
TypePtr product(std::vector<TypePtr> elems);
TypePtr handler(TypePtr from, TypePtr to);

TypePtr int_type();
TypePtr bool_type();
TypePtr unit_type();
TypePtr string_type();
TypePtr float_type();
TypePtr empty_type();
TypePtr list_type(TypePtr elem);

struct Scheme {
  std::vector<int> vars;  // quantified
  TypePtr body;
};

// Assigns 'a, 'b, ... to variables in order of first appearance; share one
// namer between types that are printed together.
class VarNamer {
 public:
  std::string name(int id);

 private:
  std::map<int, std::string> names_;
};

std::string to_string(const TypePtr& t, VarNamer& namer);
std::string to_string(const TypePtr& t);

enum class TypeErrorKind {
  Mismatch,
  OccursCheck,
  UnknownOperation,
  UnknownVariable,
  UnknownConstructor,
  UnknownType,
  Arity,
  DuplicateClause,
  DuplicateVariable,
};

const char* to_string(TypeErrorKind kind);

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, const std::string& message, Span span)
      : Error(message, span), kind_(kind) {}

  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

}  // namespace eff::types
