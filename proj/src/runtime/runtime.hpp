#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "desugar/core.hpp"
#include "runtime/env.hpp"
#include "runtime/result.hpp"
#include "runtime/value.hpp"

namespace eff::runtime {

struct RecGroup {
  const std::vector<std::pair<std::string, core::ExprPtr>>* bindings;
  Env env;  // environment the group was defined in
};

struct Closure {
  const syntax::Pattern* param;
  const core::Comp* body;
  Env env;
  std::shared_ptr<const RecGroup> rec;  // set for let rec functions
};

struct HandlerValue {
  struct Entry {
    std::int64_t instance;
    std::string_view op;
    const core::OpClause* clause;
  };
  std::vector<Entry> ops;
  const core::ValueClause* val;
  const core::ValueClause* finally;
  bool val_is_identity;
  bool finally_is_identity;
  Env env;

  // Later clauses take precedence over earlier ones.
  const Entry* find(std::int64_t instance, std::string_view op) const {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      if (it->instance == instance && it->op == op) return &*it;
    }
    return nullptr;
  }
};

// Host I/O used by the built-in `std` channel.
struct Io {
  // Receives the bytes of std#write; may throw Aborted.
  std::function<void(std::string_view)> write;
  // Returns one line without its terminator, or nullopt at end of input.
  std::function<std::optional<std::string>()> read_line;
};

class Runtime {
 public:
  explicit Runtime(Io io = {});
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  // -- globals and top-level items -------------------------------------------
  Env global_env() const { return Env(globals_); }
  void set_global(const std::string& name, Value v);
  const Value* global(std::string_view name) const;

  // Evaluates the bindings at top level (resources active) and binds them.
  void define(const core::Define& d);
  void define_rec(const core::DefineRec& d);
  // The toplevel evaluation of a computation in the global environment.
  Value run(const core::Comp& c);

  // -- semantics --------------------------------------------------------------
  Value eval_expr(const Env& env, const core::Expr& e);
  Result eval_comp(Env env, const core::Comp* c);
  Result apply(const Value& fn, const Value& arg);

  // lift(f)(Value v) = f v; lift(f)(Op(n, op, v, k)) = Op(n, op, v, λw. lift(f)(k w))
  Result lift(const FramePtr& f, Result r);
  // Handles operations and the final value; no finally clause.
  Result apply_handler(const HandlerPtr& h, Result r);
  // Full `with h handle _`: apply_handler followed by the finally clause.
  Result handle(const HandlerPtr& h, Result r);
  // Runs suspended operations against instance resources until a value
  // remains.
  Value toplevel(Result r);

  Value new_instance(std::string label, std::shared_ptr<const Resource> resource, Value initial);
  // The generic effect e#op as a function value.
  Value perform_fn(InstancePtr instance, std::string_view op);

  std::int64_t next_instance_id() const { return next_instance_; }
  const Value* state_of(std::int64_t instance) const;
  Io& io() { return io_; }

  // Matches v against p, extending env; false on mismatch.
  bool match(const syntax::Pattern& p, const Value& v, Env& env);

 private:
  Value handler_value(const Env& env, const core::Expr::Handler& h);
  Value builtin_value(const std::string& name) const;

  std::shared_ptr<Globals> globals_;
  std::unordered_map<std::int64_t, Value> store_;
  std::int64_t next_instance_ = 1;  // 0 is std
  Io io_;
};

// The primitive functions, by name (see typecheck::builtin_signatures).
const std::vector<BuiltinDef>& builtin_definitions();
const BuiltinDef* find_builtin(std::string_view name);

}  // namespace eff::runtime
