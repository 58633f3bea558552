#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "common/source.hpp"

namespace eff::core {
struct Comp;
struct Expr;
struct OpClause;
struct ValueClause;
}  // namespace eff::core

namespace eff::syntax {
struct Pattern;
}

namespace eff::runtime {

class Runtime;
class Value;
class Result;
class Env;

struct UnitValue {};
struct TupleValue;
struct VariantValue;
struct ListCell;
struct Closure;
struct BuiltinValue;
struct HandlerValue;
struct Instance;
struct ContNode;

using TuplePtr = std::shared_ptr<const TupleValue>;
using VariantPtr = std::shared_ptr<const VariantValue>;
using ListPtr = std::shared_ptr<const ListCell>;  // null is the empty list
using ClosurePtr = std::shared_ptr<const Closure>;
using BuiltinPtr = std::shared_ptr<const BuiltinValue>;
using HandlerPtr = std::shared_ptr<const HandlerValue>;
using InstancePtr = std::shared_ptr<const Instance>;
using Cont = std::shared_ptr<const ContNode>;
using StrPtr = std::shared_ptr<const std::string>;

// Lists are wrapped so that the empty list has its own alternative.
struct ListValue {
  ListPtr cells;
};

class Value {
 public:
  using Node = std::variant<UnitValue, std::int64_t, bool, double, StrPtr, TuplePtr, VariantPtr,
                            ListValue, ClosurePtr, BuiltinPtr, HandlerPtr, InstancePtr, Cont>;

  Value() = default;
  Value(std::int64_t i) : node_(i) {}
  Value(bool b) : node_(b) {}
  Value(double d) : node_(d) {}
  Value(std::string s) : node_(std::make_shared<const std::string>(std::move(s))) {}
  Value(UnitValue u) : node_(u) {}
  Value(TuplePtr t) : node_(std::move(t)) {}
  Value(VariantPtr v) : node_(std::move(v)) {}
  Value(ListValue l) : node_(std::move(l)) {}
  Value(ClosurePtr c) : node_(std::move(c)) {}
  Value(BuiltinPtr b) : node_(std::move(b)) {}
  Value(HandlerPtr h) : node_(std::move(h)) {}
  Value(InstancePtr i) : node_(std::move(i)) {}
  Value(Cont k) : node_(std::move(k)) {}

  const Node& node() const { return node_; }

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node_); }
  template <typename T>
  const T* get() const { return std::get_if<T>(&node_); }

  // Accessors that raise an ill-formed value error on a tag mismatch.
  std::int64_t as_int() const;
  bool as_bool() const;
  double as_float() const;
  const std::string& as_string() const;
  const InstancePtr& as_instance() const;

  const char* tag() const;

 private:
  Node node_;
};

struct TupleValue {
  std::vector<Value> elems;
};

struct VariantValue {
  std::string ctor;
  bool has_arg = false;
  Value arg;
};

struct ListCell {
  Value head;
  ListPtr tail;
  ~ListCell();  // iterative, so long lists do not exhaust the stack
};

Value make_tuple(std::vector<Value> elems);
Value make_variant(std::string ctor);
Value make_variant(std::string ctor, Value arg);
Value make_list(const std::vector<Value>& elems);
Value cons(Value head, const Value& tail);
std::vector<Value> list_elements(const Value& list);
extern const Value kUnit;

// Resource clauses: (argument, current state) -> Result that must be a
// pair (answer, new state).
using ResourceFn = std::function<Result(Runtime&, const Value& arg, const Value& state)>;

struct Resource {
  std::vector<std::pair<std::string, ResourceFn>> clauses;
  const ResourceFn* find(std::string_view op) const {
    for (const auto& [name, fn] : clauses) {
      if (name == op) return &fn;
    }
    return nullptr;
  }
};

struct Instance {
  std::int64_t id;
  std::string label;  // effect name, for messages
  std::shared_ptr<const Resource> resource;
};

struct BuiltinDef {
  std::string name;
  std::size_t arity;
  std::function<Result(Runtime&, const std::vector<Value>& args)> fn;
};

struct BuiltinValue {
  const BuiltinDef* def;    // null for a generic effect e#op
  std::vector<Value> args;  // partial application, size < arity
  InstancePtr instance;
  std::string_view op;
};

// Runtime errors: "<kind>: <detail>".
class RuntimeError : public Error {
 public:
  RuntimeError(std::string kind, std::string detail)
      : Error(kind + ": " + detail, Span{}), kind_(std::move(kind)), detail_(std::move(detail)) {}
  RuntimeError(std::string kind, std::string detail, Span span)
      : Error(kind + ": " + detail, span),
        kind_(std::move(kind)),
        detail_(std::move(detail)),
        located_(true) {}
  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  // False when no source position is known.
  bool located() const { return located_; }

 private:
  std::string kind_;
  std::string detail_;
  bool located_ = false;
};

// Thrown when a host callback asks to stop evaluation.
class Aborted : public std::runtime_error {
 public:
  Aborted() : std::runtime_error("aborted by host") {}
};

[[noreturn]] void ill_formed(const std::string& detail);

// OCaml-style rendering: 42, "s", (1, 2), [1; 2], Some (-1), <fun>, ...
std::string to_string(const Value& v);

// Structural equality and ordering; functional values raise an error.
bool equal(const Value& a, const Value& b);
int compare(const Value& a, const Value& b);

}  // namespace eff::runtime
