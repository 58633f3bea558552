#include <cmath>
#include <limits>

#include "common/format.hpp"
#include "runtime/runtime.hpp"

namespace eff::runtime {
namespace {

[[noreturn]] void overflow(const char* op) {
  throw RuntimeError("integer overflow", std::string("in (") + op + ")");
}

BuiltinDef int_op(std::string name, std::int64_t (*f)(std::int64_t, std::int64_t)) {
  return {std::move(name), 2, [f](Runtime&, const std::vector<Value>& a) {
            return Result(Value(f(a[0].as_int(), a[1].as_int())));
          }};
}

BuiltinDef float_op(std::string name, double (*f)(double, double)) {
  return {std::move(name), 2, [f](Runtime&, const std::vector<Value>& a) {
            return Result(Value(f(a[0].as_float(), a[1].as_float())));
          }};
}

BuiltinDef comparison(std::string name, bool (*f)(int)) {
  return {std::move(name), 2, [f](Runtime&, const std::vector<Value>& a) {
            return Result(Value(f(compare(a[0], a[1]))));
          }};
}

template <typename F>
BuiltinDef unary(std::string name, F f) {
  return {std::move(name), 1, [f](Runtime&, const std::vector<Value>& a) { return Result(f(a[0])); }};
}

std::vector<BuiltinDef> make_definitions() {
  std::vector<BuiltinDef> defs;
  defs.push_back(int_op("+", [](std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) overflow("+");
    return r;
  }));
  defs.push_back(int_op("-", [](std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) overflow("-");
    return r;
  }));
  defs.push_back(int_op("*", [](std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) overflow("*");
    return r;
  }));
  defs.push_back(int_op("/", [](std::int64_t x, std::int64_t y) {
    if (y == 0) throw RuntimeError("division by zero", "in (/)");
    if (x == std::numeric_limits<std::int64_t>::min() && y == -1) overflow("/");
    return x / y;
  }));
  defs.push_back(int_op("mod", [](std::int64_t x, std::int64_t y) {
    if (y == 0) throw RuntimeError("division by zero", "in (mod)");
    if (y == -1) return std::int64_t{0};
    return x % y;
  }));
  defs.push_back(unary("~-", [](const Value& v) {
    const std::int64_t x = v.as_int();
    if (x == std::numeric_limits<std::int64_t>::min()) overflow("~-");
    return Value(-x);
  }));
  defs.push_back(float_op("+.", [](double x, double y) { return x + y; }));
  defs.push_back(float_op("-.", [](double x, double y) { return x - y; }));
  defs.push_back(float_op("*.", [](double x, double y) { return x * y; }));
  defs.push_back(float_op("/.", [](double x, double y) { return x / y; }));
  defs.push_back(unary("~-.", [](const Value& v) { return Value(-v.as_float()); }));
  defs.push_back(comparison("=", [](int c) { return c == 0; }));
  defs.push_back(comparison("<>", [](int c) { return c != 0; }));
  defs.push_back(comparison("<", [](int c) { return c < 0; }));
  defs.push_back(comparison(">", [](int c) { return c > 0; }));
  defs.push_back(comparison("<=", [](int c) { return c <= 0; }));
  defs.push_back(comparison(">=", [](int c) { return c >= 0; }));
  defs.push_back({"&&", 2, [](Runtime&, const std::vector<Value>& a) {
                    return Result(Value(a[0].as_bool() && a[1].as_bool()));
                  }});
  defs.push_back({"||", 2, [](Runtime&, const std::vector<Value>& a) {
                    return Result(Value(a[0].as_bool() || a[1].as_bool()));
                  }});
  defs.push_back({"@", 2, [](Runtime&, const std::vector<Value>& a) {
                    std::vector<Value> front = list_elements(a[0]);
                    Value out = a[1];
                    list_elements(out);  // tag check
                    for (auto it = front.rbegin(); it != front.rend(); ++it) out = cons(*it, out);
                    return Result(out);
                  }});
  defs.push_back(unary("string_of_int", [](const Value& v) { return Value(std::to_string(v.as_int())); }));
  defs.push_back(unary("string_of_float", [](const Value& v) { return Value(format_float(v.as_float())); }));
  defs.push_back(unary("float_of_int", [](const Value& v) { return Value(static_cast<double>(v.as_int())); }));
  defs.push_back(unary("int_of_float", [](const Value& v) {
    const double d = std::trunc(v.as_float());
    // 2^63 is exactly representable; anything at or beyond it does not fit.
    if (!(d >= -9223372036854775808.0 && d < 9223372036854775808.0)) overflow("int_of_float");
    return Value(static_cast<std::int64_t>(d));
  }));
  defs.push_back(unary("string_length", [](const Value& v) {
    return Value(static_cast<std::int64_t>(v.as_string().size()));
  }));
  defs.push_back({"string_concat", 2, [](Runtime&, const std::vector<Value>& a) {
                    return Result(Value(a[0].as_string() + a[1].as_string()));
                  }});
  return defs;
}

}  // namespace

const std::vector<BuiltinDef>& builtin_definitions() {
  static const std::vector<BuiltinDef> defs = make_definitions();
  return defs;
}

const BuiltinDef* find_builtin(std::string_view name) {
  for (const auto& def : builtin_definitions()) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

}  // namespace eff::runtime
