#include "runtime/value.hpp"

#include "common/format.hpp"
#include "runtime/env.hpp"
#include "runtime/runtime.hpp"
#include "runtime/stack.hpp"

namespace eff::runtime {

const Value kUnit{UnitValue{}};

void ill_formed(const std::string& detail) { throw RuntimeError("ill-formed value", detail); }

const char* Value::tag() const {
  static const char* const names[] = {"unit",    "int",     "bool",     "float",   "string",
                                      "tuple",   "variant", "list",     "function", "function",
                                      "handler", "instance", "continuation"};
  return names[node_.index()];
}

std::int64_t Value::as_int() const {
  if (const auto* i = get<std::int64_t>()) return *i;
  ill_formed(std::string("expected an int but got a ") + tag());
}

bool Value::as_bool() const {
  if (const auto* b = get<bool>()) return *b;
  ill_formed(std::string("expected a bool but got a ") + tag());
}

double Value::as_float() const {
  if (const auto* d = get<double>()) return *d;
  ill_formed(std::string("expected a float but got a ") + tag());
}

const std::string& Value::as_string() const {
  if (const auto* s = get<StrPtr>()) return **s;
  ill_formed(std::string("expected a string but got a ") + tag());
}

const InstancePtr& Value::as_instance() const {
  if (const auto* i = get<InstancePtr>()) return *i;
  ill_formed(std::string("expected an effect instance but got a ") + tag());
}

ListCell::~ListCell() {
  // Unlink uniquely owned tails one at a time.
  ListPtr next = std::move(tail);
  while (next && next.use_count() == 1) {
    ListPtr after = std::move(const_cast<ListCell&>(*next).tail);
    next = std::move(after);
  }
}

EnvNode::~EnvNode() {
  std::shared_ptr<const EnvNode> n = std::move(next);
  while (n && n.use_count() == 1) {
    std::shared_ptr<const EnvNode> after = std::move(const_cast<EnvNode&>(*n).next);
    n = std::move(after);
  }
}

Value make_tuple(std::vector<Value> elems) {
  return Value(std::make_shared<const TupleValue>(TupleValue{std::move(elems)}));
}

Value make_variant(std::string ctor) {
  return Value(std::make_shared<const VariantValue>(VariantValue{std::move(ctor), false, Value{}}));
}

Value make_variant(std::string ctor, Value arg) {
  return Value(std::make_shared<const VariantValue>(VariantValue{std::move(ctor), true, std::move(arg)}));
}

Value make_list(const std::vector<Value>& elems) {
  ListPtr cells;
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    cells = std::make_shared<const ListCell>(ListCell{*it, std::move(cells)});
  }
  return Value(ListValue{std::move(cells)});
}

Value cons(Value head, const Value& tail) {
  const auto* l = tail.get<ListValue>();
  if (!l) ill_formed(std::string("expected a list but got a ") + tail.tag());
  return Value(ListValue{std::make_shared<const ListCell>(ListCell{std::move(head), l->cells})});
}

std::vector<Value> list_elements(const Value& list) {
  const auto* l = list.get<ListValue>();
  if (!l) ill_formed(std::string("expected a list but got a ") + list.tag());
  std::vector<Value> out;
  for (const ListCell* c = l->cells.get(); c != nullptr; c = c->tail.get()) out.push_back(c->head);
  return out;
}

namespace {

void print(const Value& v, std::string& out, bool as_argument);

void print_list(const ListValue& l, std::string& out) {
  out += '[';
  for (const ListCell* c = l.cells.get(); c != nullptr; c = c->tail.get()) {
    if (c != l.cells.get()) out += "; ";
    print(c->head, out, false);
  }
  out += ']';
}

void print(const Value& v, std::string& out, bool as_argument) {
  stack_check();
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnitValue>) {
          out += "()";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          if (x < 0 && as_argument) {
            out += "(" + std::to_string(x) + ")";
          } else {
            out += std::to_string(x);
          }
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          const std::string s = format_float(x);
          out += (as_argument && s[0] == '-') ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, StrPtr>) {
          out += quote_string(*x);
        } else if constexpr (std::is_same_v<T, TuplePtr>) {
          out += '(';
          for (std::size_t i = 0; i < x->elems.size(); ++i) {
            if (i > 0) out += ", ";
            print(x->elems[i], out, false);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, VariantPtr>) {
          if (!x->has_arg) {
            out += x->ctor;
          } else {
            if (as_argument) out += '(';
            out += x->ctor + " ";
            print(x->arg, out, true);
            if (as_argument) out += ')';
          }
        } else if constexpr (std::is_same_v<T, ListValue>) {
          print_list(x, out);
        } else if constexpr (std::is_same_v<T, ClosurePtr> || std::is_same_v<T, BuiltinPtr>) {
          out += "<fun>";
        } else if constexpr (std::is_same_v<T, HandlerPtr>) {
          out += "<handler>";
        } else if constexpr (std::is_same_v<T, InstancePtr>) {
          out += "<" + x->label + " #" + std::to_string(x->id) + ">";
        } else {
          out += "<cont>";
        }
      },
      v.node());
}

int three_way(auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); }

}  // namespace

std::string to_string(const Value& v) {
  std::string out;
  print(v, out, false);
  return out;
}

int compare(const Value& a, const Value& b) {
  stack_check();
  if (a.node().index() != b.node().index()) {
    ill_formed(std::string("cannot compare a ") + a.tag() + " with a " + b.tag());
  }
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, UnitValue>) {
          return 0;
        } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, bool> ||
                             std::is_same_v<T, double>) {
          return three_way(x, y);
        } else if constexpr (std::is_same_v<T, StrPtr>) {
          const int c = x->compare(*y);
          return c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else if constexpr (std::is_same_v<T, TuplePtr>) {
          const std::size_t n = std::min(x->elems.size(), y->elems.size());
          for (std::size_t i = 0; i < n; ++i) {
            if (int c = compare(x->elems[i], y->elems[i])) return c;
          }
          return three_way(x->elems.size(), y->elems.size());
        } else if constexpr (std::is_same_v<T, VariantPtr>) {
          if (int c = x->ctor.compare(y->ctor)) return c < 0 ? -1 : 1;
          if (x->has_arg != y->has_arg) return x->has_arg ? 1 : -1;
          return x->has_arg ? compare(x->arg, y->arg) : 0;
        } else if constexpr (std::is_same_v<T, ListValue>) {
          const ListCell* p = x.cells.get();
          const ListCell* q = y.cells.get();
          for (; p && q; p = p->tail.get(), q = q->tail.get()) {
            if (int c = compare(p->head, q->head)) return c;
          }
          return p ? 1 : (q ? -1 : 0);
        } else if constexpr (std::is_same_v<T, InstancePtr>) {
          return three_way(x->id, y->id);
        } else {
          ill_formed(std::string("cannot compare functional values (") + a.tag() + ")");
        }
      },
      a.node());
}

bool equal(const Value& a, const Value& b) { return compare(a, b) == 0; }

}  // namespace eff::runtime
